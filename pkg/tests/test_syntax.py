"""Tests for the Java-subset parser and subtree extraction."""

import pytest

from ctses.errors import ParseError
from ctses.lexer import LexConfig, lex
from ctses.syntax import TreeNode, parse, subtree_multiset, to_sexpr


def parse_src(source: str):
    return parse(lex(source))


def labels_in(node: TreeNode) -> list[str]:
    found = [node.label]
    for child in node.children:
        found.extend(labels_in(child))
    return found


def count_label(tree, label: str) -> int:
    return labels_in(tree.root).count(label)


def internal_nodes(node: TreeNode) -> int:
    own = 1 if node.children else 0
    return own + sum(internal_nodes(c) for c in node.children)


class TestBasicParsing:
    def test_minimal_class(self):
        tree = parse_src("class A { }")
        root = tree.root
        assert root.label == "CompilationUnit"
        (class_decl,) = root.children
        assert class_decl.label == "ClassDecl"
        name, body = class_decl.children
        assert (name.label, name.leaf_text) == ("Name", "A")
        assert body.label == "Block"
        assert body.children == ()

    def test_minimal_class_multiset_has_two_entries(self):
        multiset = subtree_multiset(parse_src("class A { }"))
        assert sum(multiset.values()) == 2
        assert set(multiset) == {
            "ClassDecl(Name:ID,Block())",
            "CompilationUnit(ClassDecl(Name:ID,Block()))",
        }

    def test_empty_source_parses_to_empty_unit(self):
        tree = parse_src("")
        assert tree.root.children == ()
        assert tree.node_count == 1

    def test_node_count_matches_reachable_nodes(self):
        tree = parse_src("class A { void f() { int x = 1; } }")
        assert tree.node_count == len(labels_in(tree.root))

    def test_package_and_imports(self):
        tree = parse_src("package a.b; import java.util.List; import static org.junit.Assert.*; class A {}")
        labels = labels_in(tree.root)
        assert labels.count("PackageDecl") == 1
        assert labels.count("ImportDecl") == 2

    def test_statements_accepted_at_top_level(self):
        tree = parse_src("int a = 1; foo(a);")
        labels = labels_in(tree.root)
        assert "LocalVarDecl" in labels
        assert "ExprStmt" in labels

    def test_method_accepted_at_top_level(self):
        tree = parse_src("public void f() { return; }")
        assert count_label(tree, "MethodDecl") == 1

    def test_parse_determinism(self):
        source = "class A { void f() { if (a < b) { c(); } else { d(); } } }"
        assert parse_src(source).root == parse_src(source).root


class TestStatements:
    @pytest.mark.parametrize("body, label", [
        ("int x = 1;", "LocalVarDecl"),
        ("x = 1;", "ExprStmt"),
        ("if (a) b();", "IfStmt"),
        ("if (a) b(); else c();", "IfStmt"),
        ("while (a) b();", "WhileStmt"),
        ("for (int i = 0; i < 3; i++) b();", "ForStmt"),
        ("for (String s : items) b(s);", "ForEachStmt"),
        ("try { a(); } catch (Exception e) { b(); }", "TryStmt"),
        ("try { a(); } finally { b(); }", "TryStmt"),
        ("return;", "ReturnStmt"),
        ("return x;", "ReturnStmt"),
        ("throw new IllegalStateException();", "ThrowStmt"),
        ("break;", "BreakStmt"),
        ("continue;", "ContinueStmt"),
        (";", "EmptyStmt"),
        ("{ a(); b(); }", "Block"),
    ])
    def test_statement_forms(self, body, label):
        tree = parse_src(f"class A {{ void f() {{ {body} }} }}")
        assert count_label(tree, label) >= 1

    def test_multi_declarator(self):
        tree = parse_src("int a = 1, b = 2;")
        assert count_label(tree, "VarDeclarator") == 2

    def test_try_with_resources(self):
        tree = parse_src("try (Reader r = open()) { use(r); } catch (IOException e) { }")
        assert count_label(tree, "Resources") == 1

    def test_multi_catch(self):
        tree = parse_src("try { a(); } catch (IOException | SQLException e) { }")
        catch = next(n for n in _walk(tree.root) if n.label == "CatchClause")
        type_refs = [c for c in catch.children if c.label == "TypeRef"]
        assert len(type_refs) == 2

    def test_bare_try_rejected(self):
        with pytest.raises(ParseError):
            parse_src("try { a(); }")


class TestExpressions:
    @pytest.mark.parametrize("expr, label", [
        ("a = 1", "Assignment"),
        ("a += 1", "Assignment"),
        ("a ? b : c", "Conditional"),
        ("a + b * c", "BinaryExpr"),
        ("!done", "UnaryExpr"),
        ("count++", "PostfixExpr"),
        ("(String) obj", "Cast"),
        ("foo()", "MethodCall"),
        ("obj.method(1, 2)", "MethodCall"),
        ("obj.field", "FieldAccess"),
        ("arr[0]", "ArrayAccess"),
        ("new Foo(1)", "ObjectCreation"),
        ("new int[4]", "ArrayCreation"),
        ("new int[] {1, 2}", "ArrayCreation"),
        ("a instanceof Foo", "BinaryExpr"),
    ])
    def test_expression_forms(self, expr, label):
        tree = parse_src(f"{expr};")
        assert count_label(tree, label) >= 1

    def test_precedence_multiplication_binds_tighter(self):
        tree = parse_src("x = a + b * c;")
        assignment = next(n for n in _walk(tree.root) if n.label == "Assignment")
        outer = assignment.children[2]
        assert outer.label == "BinaryExpr"
        assert outer.children[1].leaf_text == "+"
        inner = outer.children[2]
        assert inner.children[1].leaf_text == "*"

    def test_chained_calls(self):
        tree = parse_src("builder.withA(1).withB(2).build();")
        assert count_label(tree, "MethodCall") == 3

    def test_class_literal(self):
        tree = parse_src("Class c = Foo.class;")
        access = next(n for n in _walk(tree.root) if n.label == "FieldAccess")
        assert access.children[1].leaf_text == "class"

    def test_anonymous_class_body(self):
        tree = parse_src("Runnable r = new Runnable() { public void run() { } };")
        assert count_label(tree, "ObjectCreation") == 1
        assert count_label(tree, "MethodDecl") == 1

    def test_generics_are_erased(self):
        plain = subtree_multiset(parse_src("List x = new ArrayList();"))
        generic = subtree_multiset(parse_src("List<String> x = new ArrayList<String>();"))
        assert plain == generic

    def test_nested_generics(self):
        tree = parse_src("Map<String, List<Integer>> m = build();")
        assert count_label(tree, "LocalVarDecl") == 1

    def test_parse_error_has_location_and_production(self):
        with pytest.raises(ParseError) as exc_info:
            parse_src("class A { void f() { switch (x) { } } }")
        err = exc_info.value
        assert err.line >= 1
        assert err.column >= 1
        assert err.production


class TestAnnotationsAndModifiers:
    def test_annotation_with_value_pairs(self):
        tree = parse_src("@Test(timeout = 4000) public void f() { }")
        assert count_label(tree, "Annotation") == 1

    def test_marker_annotation(self):
        tree = parse_src("@Override public void f() { }")
        assert count_label(tree, "Annotation") == 1

    def test_field_with_modifiers(self):
        tree = parse_src("class A { private static final int LIMIT = 3; }")
        assert count_label(tree, "FieldDecl") == 1
        assert count_label(tree, "Modifier") == 3

    def test_static_initializer(self):
        tree = parse_src("class A { static { setup(); } }")
        assert count_label(tree, "InitBlock") == 1

    def test_constructor(self):
        tree = parse_src("class A { public A(int x) { this.x = x; } }")
        assert count_label(tree, "CtorDecl") == 1

    def test_varargs_parameter(self):
        tree = parse_src("void f(String... args) { }")
        assert count_label(tree, "Param") == 1
        assert count_label(tree, "ArrayType") == 1


class TestSubtreeMultiset:
    def test_id_lit_normalization(self):
        # Renaming the variable and changing the literal leaves the
        # multiset unchanged: exactly the three internal nodes below.
        first = subtree_multiset(parse_src("int a = 1;"))
        second = subtree_multiset(parse_src("int b = 2;"))
        assert first == second
        assert set(first) == {
            "VarDeclarator(Name:ID,LiteralNode:LIT)",
            "LocalVarDecl(TypeRef:int,VarDeclarator(Name:ID,LiteralNode:LIT))",
            "CompilationUnit(LocalVarDecl(TypeRef:int,VarDeclarator(Name:ID,LiteralNode:LIT)))",
        }

    def test_identical_trees_identical_multisets(self):
        source = "class A { void f() { g(1); } }"
        assert subtree_multiset(parse_src(source)) == subtree_multiset(parse_src(source))

    def test_multiset_size_equals_internal_node_count(self):
        for source in (
            "class A { }",
            "int a = 1; int b = a;",
            "class A { void f(int x) { if (x > 0) { g(x); } } }",
        ):
            tree = parse_src(source)
            assert sum(subtree_multiset(tree).values()) == internal_nodes(tree.root)

    def test_alpha_renaming_preserves_multiset(self):
        original = """
        class A {
          void f() {
            int total = 0;
            for (int i = 0; i < 5; i++) { total += i; }
            report(total);
          }
        }
        """
        renamed = """
        class B {
          void g() {
            int sum = 0;
            for (int k = 0; k < 5; k++) { sum += k; }
            publish(sum);
          }
        }
        """
        assert subtree_multiset(parse_src(original)) == subtree_multiset(parse_src(renamed))

    def test_primitive_types_stay_distinct(self):
        assert subtree_multiset(parse_src("int a = 1;")) != subtree_multiset(parse_src("long a = 1;"))


class TestSExpression:
    def test_sexpr_roundtrips_labels(self):
        text = to_sexpr(parse_src("int a = 1;"))
        assert text.startswith("(CompilationUnit")
        assert "(LocalVarDecl" in text
        assert "(Name 'a')" in text


class TestBundledSources:
    def test_original_parses_with_one_try_one_catch(self, macaw_original):
        tree = parse_src(macaw_original)
        assert count_label(tree, "TryStmt") == 1
        assert count_label(tree, "CatchClause") == 1

    def test_refactored_parses_with_one_try_one_catch(self, macaw_refactored):
        tree = parse_src(macaw_refactored)
        assert count_label(tree, "TryStmt") == 1
        assert count_label(tree, "CatchClause") == 1

    def test_refactored_catch_block_is_empty(self, macaw_refactored):
        # Its only contents are comments, which the parser never sees.
        tree = parse_src(macaw_refactored)
        catch = next(n for n in _walk(tree.root) if n.label == "CatchClause")
        assert catch.children[-1].label == "Block"
        assert catch.children[-1].children == ()

    def test_comment_handling_does_not_change_tree(self, macaw_refactored):
        with_comments = parse(lex(macaw_refactored))
        without = parse(lex(macaw_refactored, LexConfig(include_comments=False)))
        assert with_comments.root == without.root


def _walk(node: TreeNode):
    yield node
    for child in node.children:
        yield from _walk(child)
