"""Recursive-descent parser for the Java subset found in generated tests.

The grammar covers what EvoSuite-style unit tests and their refactorings
actually use: package/import declarations, classes with fields, methods
and initializer blocks, annotations and modifiers, the common statement
forms, and expressions up to assignments, calls, casts, array handling
and object creation. Anything outside the subset raises :class:`ParseError`
at the first offending token instead of degrading silently.

Bare method declarations and loose statements are accepted at the top
level so that method-sized excerpts can be scored without wrapping them
in a synthetic class.

Generic type arguments are scanned permissively and erased from the tree:
``List<String>`` and ``List<Integer>`` produce the same ``TypeRef``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import ParseError
from .lexer import Token, TokenKind, TokenStream

# Primitive type names keep their text in subtree serializations; every
# other type name is identifier material and normalizes to ID.
PRIMITIVE_TYPES: frozenset[str] = frozenset({
    "boolean", "byte", "short", "int", "long", "char", "float", "double", "void",
})

# Leaf labels whose text is an identifier and therefore serializes as ID.
_IDENTIFIER_LEAVES: frozenset[str] = frozenset({
    "Name", "MethodName", "FieldName", "PackageDecl", "ImportDecl",
})

_MODIFIER_WORDS: frozenset[str] = frozenset({
    "public", "protected", "private", "static", "final", "abstract",
    "native", "synchronized", "transient", "volatile", "strictfp",
})

#: Every production label the parser can emit.
NODE_LABELS: frozenset[str] = frozenset({
    "CompilationUnit", "PackageDecl", "ImportDecl", "ClassDecl", "InitBlock",
    "FieldDecl", "MethodDecl", "CtorDecl", "Params", "Param", "Throws",
    "Annotation", "Modifier", "Block", "LocalVarDecl", "VarDeclarator",
    "ExprStmt", "IfStmt", "WhileStmt", "ForStmt", "ForInit", "ForCond",
    "ForUpdate", "ForEachStmt", "TryStmt", "Resources", "CatchClause",
    "FinallyClause", "ReturnStmt", "ThrowStmt", "BreakStmt", "ContinueStmt",
    "EmptyStmt", "Assignment", "Conditional", "BinaryExpr", "UnaryExpr",
    "PostfixExpr", "Cast", "MethodCall", "Args", "FieldAccess", "ArrayAccess",
    "ObjectCreation", "ArrayCreation", "ArrayInit", "ArrayType", "TypeRef",
    "Name", "MethodName", "FieldName", "LiteralNode", "Op",
})


@dataclass(frozen=True)
class TreeNode:
    """One grammar production: internal node, leaf, or explicitly empty.

    A node carries ``leaf_text`` or children, never both. Productions such
    as an empty ``Block`` or ``Args`` legitimately have neither.
    """

    label: str
    children: tuple["TreeNode", ...] = ()
    leaf_text: str | None = None

    def __post_init__(self) -> None:
        if self.children and self.leaf_text is not None:
            raise ValueError(f"{self.label}: node cannot have both children and leaf text")

    @property
    def is_leaf(self) -> bool:
        return self.leaf_text is not None

    @property
    def is_internal(self) -> bool:
        return len(self.children) > 0


@dataclass(frozen=True)
class SyntaxTree:
    """Parsed compilation unit plus its reachable node count."""

    root: TreeNode
    node_count: int


def _count_nodes(node: TreeNode) -> int:
    return 1 + sum(_count_nodes(child) for child in node.children)


def parse(tokens: TokenStream) -> SyntaxTree:
    """Parse a token stream into a syntax tree.

    Comment-word tokens are skipped; the parser only sees code tokens.

    Raises:
        ParseError: input outside the supported subset, reported with the
            first offending token's location and the active production.
    """
    root = _Parser(tokens.code_tokens()).compilation_unit()
    return SyntaxTree(root=root, node_count=_count_nodes(root))


def subtree_multiset(tree: SyntaxTree) -> Counter:
    """Canonical serializations of every internal subtree.

    Identifier leaves serialize as the placeholder ``ID`` and literal
    leaves as ``LIT``, so alpha-renaming and literal changes do not alter
    the multiset. One entry is emitted per node with at least one child;
    leaves and explicitly-empty productions are not emitted on their own.
    """
    out: Counter = Counter()
    _collect(tree.root, out)
    return out


def _collect(node: TreeNode, out: Counter) -> str:
    if node.is_leaf:
        return f"{node.label}:{_normalize_leaf(node)}"
    if not node.children:
        return f"{node.label}()"
    serialized = f"{node.label}({','.join(_collect(child, out) for child in node.children)})"
    out[serialized] += 1
    return serialized


def _normalize_leaf(node: TreeNode) -> str:
    text = node.leaf_text or ""
    if node.label == "LiteralNode":
        return "LIT"
    if node.label in _IDENTIFIER_LEAVES:
        return "ID"
    if node.label == "TypeRef":
        return text if text in PRIMITIVE_TYPES else "ID"
    return text  # Op, Modifier: keyword/symbol text is structural


def to_sexpr(tree: SyntaxTree) -> str:
    """Render the tree as an S-expression, one parenthesized group per node."""
    return _sexpr(tree.root)


def _sexpr(node: TreeNode) -> str:
    if node.is_leaf:
        return f"({node.label} {node.leaf_text!r})"
    if not node.children:
        return f"({node.label})"
    return f"({node.label} {' '.join(_sexpr(c) for c in node.children)})"


# ---------------------------------------------------------------------------
# Parser implementation
# ---------------------------------------------------------------------------

_ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="}

# Token texts that may directly follow a parenthesized type when the
# parenthesis is a cast rather than a grouping.
_CAST_FOLLOW_KINDS = (TokenKind.IDENTIFIER, TokenKind.LITERAL)
_CAST_FOLLOW_TEXTS = {"(", "!", "~", "new", "this", "super", "true", "false", "null"}


def _leaf(label: str, text: str) -> TreeNode:
    return TreeNode(label, leaf_text=text)


def _node(label: str, *children: TreeNode) -> TreeNode:
    return TreeNode(label, children=tuple(children))


class _Parser:
    def __init__(self, tokens: tuple[Token, ...]) -> None:
        self._toks = tokens
        self._pos = 0

    # -- token access -------------------------------------------------------

    def _peek(self, offset: int = 0) -> Token | None:
        pos = self._pos + offset
        return self._toks[pos] if pos < len(self._toks) else None

    def _at(self, *texts: str) -> bool:
        tok = self._peek()
        return tok is not None and tok.text in texts

    def _at_kind(self, kind: TokenKind) -> bool:
        tok = self._peek()
        return tok is not None and tok.kind is kind

    def _next(self, production: str) -> Token:
        tok = self._peek()
        if tok is None:
            self._fail("unexpected end of input", production)
        self._pos += 1
        return tok

    def _expect(self, text: str, production: str) -> Token:
        tok = self._peek()
        if tok is None or tok.text != text:
            got = "end of input" if tok is None else repr(tok.text)
            self._fail(f"expected {text!r}, got {got}", production)
        self._pos += 1
        return tok

    def _expect_identifier(self, production: str) -> Token:
        tok = self._peek()
        if tok is None or tok.kind is not TokenKind.IDENTIFIER:
            got = "end of input" if tok is None else repr(tok.text)
            self._fail(f"expected identifier, got {got}", production)
        self._pos += 1
        return tok

    def _fail(self, message: str, production: str):
        tok = self._peek()
        if tok is None:
            last = self._toks[-1] if self._toks else None
            line = last.line if last else 1
            col = (last.column + len(last.text)) if last else 1
        else:
            line, col = tok.line, tok.column
        raise ParseError(message, line, col, production)

    # -- top level ------------------------------------------------------------

    def compilation_unit(self) -> TreeNode:
        items: list[TreeNode] = []
        while self._peek() is not None:
            items.append(self._top_level_item())
        return TreeNode("CompilationUnit", children=tuple(items))

    def _top_level_item(self) -> TreeNode:
        if self._at("package"):
            return self._package_decl()
        if self._at("import"):
            return self._import_decl()
        mark = self._pos
        pre = self._pre_items()
        if self._at("class"):
            return self._class_decl(pre)
        if pre or self._looks_like_method_header():
            self._pos = mark
            pre = self._pre_items()
            return self._method_decl(pre)
        self._pos = mark
        return self._statement()

    def _package_decl(self) -> TreeNode:
        self._expect("package", "PackageDecl")
        name = self._qualified_name("PackageDecl")
        self._expect(";", "PackageDecl")
        return _leaf("PackageDecl", name)

    def _import_decl(self) -> TreeNode:
        self._expect("import", "ImportDecl")
        prefix = ""
        if self._at("static"):
            self._next("ImportDecl")
            prefix = "static "
        name = self._qualified_name("ImportDecl")
        if self._at("."):
            self._next("ImportDecl")
            self._expect("*", "ImportDecl")
            name += ".*"
        self._expect(";", "ImportDecl")
        return _leaf("ImportDecl", prefix + name)

    def _qualified_name(self, production: str) -> str:
        parts = [self._expect_identifier(production).text]
        while self._at(".") and self._peek(1) is not None and self._peek(1).kind is TokenKind.IDENTIFIER:
            self._next(production)
            parts.append(self._next(production).text)
        return ".".join(parts)

    # -- declarations ---------------------------------------------------------

    def _pre_items(self) -> list[TreeNode]:
        """Annotations and modifiers, in source order."""
        items: list[TreeNode] = []
        while True:
            if self._at("@"):
                items.append(self._annotation())
            elif self._at(*_MODIFIER_WORDS):
                items.append(_leaf("Modifier", self._next("Modifier").text))
            else:
                return items

    def _annotation(self) -> TreeNode:
        self._expect("@", "Annotation")
        name = _leaf("Name", self._qualified_name("Annotation"))
        if not self._at("("):
            return _node("Annotation", name)
        self._next("Annotation")
        args: list[TreeNode] = []
        while not self._at(")"):
            args.append(self._annotation_value())
            if self._at(","):
                self._next("Annotation")
        self._expect(")", "Annotation")
        return _node("Annotation", name, _node("Args", *args))

    def _annotation_value(self) -> TreeNode:
        # Either an element-value pair (name = value) or a bare value.
        nxt = self._peek(1)
        if self._at_kind(TokenKind.IDENTIFIER) and nxt is not None and nxt.text == "=":
            name = _leaf("Name", self._next("Annotation").text)
            op = _leaf("Op", self._next("Annotation").text)
            return _node("Assignment", name, op, self._annotation_value())
        if self._at("{"):
            return self._array_init()
        return self._expression()

    def _class_decl(self, pre: list[TreeNode]) -> TreeNode:
        self._expect("class", "ClassDecl")
        name = _leaf("Name", self._expect_identifier("ClassDecl").text)
        self._skip_type_args()
        supers: list[TreeNode] = []
        if self._at("extends"):
            self._next("ClassDecl")
            supers.append(self._type("ClassDecl"))
        if self._at("implements"):
            self._next("ClassDecl")
            supers.append(self._type("ClassDecl"))
            while self._at(","):
                self._next("ClassDecl")
                supers.append(self._type("ClassDecl"))
        body = self._class_body()
        return TreeNode("ClassDecl", children=tuple(pre) + (name, *supers, body))

    def _class_body(self) -> TreeNode:
        self._expect("{", "ClassDecl")
        members: list[TreeNode] = []
        while not self._at("}"):
            if self._peek() is None:
                self._fail("unexpected end of input in class body", "ClassDecl")
            members.append(self._member())
        self._expect("}", "ClassDecl")
        return TreeNode("Block", children=tuple(members))

    def _member(self) -> TreeNode:
        pre = self._pre_items()
        if self._at("class"):
            return self._class_decl(pre)
        if self._at("{"):
            # instance/static initializer: any 'static' modifier is in pre
            return TreeNode("InitBlock", children=tuple(pre) + (self._block(),))
        if self._at(";"):
            self._next("ClassDecl")
            return TreeNode("EmptyStmt")
        # Constructor: identifier directly followed by '('.
        nxt = self._peek(1)
        if self._at_kind(TokenKind.IDENTIFIER) and nxt is not None and nxt.text == "(":
            return self._ctor_decl(pre)
        if self._looks_like_method_header():
            return self._method_decl(pre)
        # Field declaration: type followed by declarators.
        decl_type = self._type("FieldDecl")
        declarators = self._var_declarators("FieldDecl")
        self._expect(";", "FieldDecl")
        return TreeNode("FieldDecl", children=tuple(pre) + (decl_type, *declarators))

    def _looks_like_method_header(self) -> bool:
        """Speculatively check for ``[<T,...>] (type | void) Identifier (``."""
        mark = self._pos
        try:
            if self._at("<"):
                self._skip_type_args()
            self._type("MethodDecl")
            ok = self._at_kind(TokenKind.IDENTIFIER) and \
                self._peek(1) is not None and self._peek(1).text == "("
        except ParseError:
            ok = False
        self._pos = mark
        return ok

    def _method_decl(self, pre: list[TreeNode]) -> TreeNode:
        if self._at("<"):
            self._skip_type_args()  # declared type parameters, erased
        ret = self._type("MethodDecl")
        name = _leaf("MethodName", self._expect_identifier("MethodDecl").text)
        params = self._params()
        rest = self._throws_and_body("MethodDecl")
        return TreeNode("MethodDecl", children=tuple(pre) + (ret, name, params, *rest))

    def _ctor_decl(self, pre: list[TreeNode]) -> TreeNode:
        name = _leaf("MethodName", self._expect_identifier("CtorDecl").text)
        params = self._params()
        rest = self._throws_and_body("CtorDecl")
        return TreeNode("CtorDecl", children=tuple(pre) + (name, params, *rest))

    def _throws_and_body(self, production: str) -> list[TreeNode]:
        rest: list[TreeNode] = []
        if self._at("throws"):
            self._next(production)
            thrown = [_leaf("TypeRef", self._qualified_name(production))]
            while self._at(","):
                self._next(production)
                thrown.append(_leaf("TypeRef", self._qualified_name(production)))
            rest.append(TreeNode("Throws", children=tuple(thrown)))
        if self._at(";"):
            self._next(production)  # abstract/native: no body
        else:
            rest.append(self._block())
        return rest

    def _params(self) -> TreeNode:
        self._expect("(", "Params")
        params: list[TreeNode] = []
        while not self._at(")"):
            while self._at("final") or self._at("@"):
                if self._at("@"):
                    self._annotation()
                else:
                    self._next("Param")
            param_type = self._type("Param")
            if self._at("..."):
                self._next("Param")
                param_type = _node("ArrayType", param_type)
            name = _leaf("Name", self._expect_identifier("Param").text)
            while self._at("[") and self._peek(1) is not None and self._peek(1).text == "]":
                self._next("Param")
                self._next("Param")
                param_type = _node("ArrayType", param_type)
            params.append(_node("Param", param_type, name))
            if self._at(","):
                self._next("Param")
        self._expect(")", "Params")
        return TreeNode("Params", children=tuple(params))

    # -- types ------------------------------------------------------------------

    def _type(self, production: str) -> TreeNode:
        tok = self._peek()
        if tok is None:
            self._fail("expected type", production)
        if tok.text in PRIMITIVE_TYPES:
            self._next(production)
            base = _leaf("TypeRef", tok.text)
        elif tok.kind is TokenKind.IDENTIFIER:
            base = _leaf("TypeRef", self._qualified_name(production))
            self._skip_type_args()
        else:
            self._fail(f"expected type, got {tok.text!r}", production)
        while self._at("[") and self._peek(1) is not None and self._peek(1).text == "]":
            self._next(production)
            self._next(production)
            base = _node("ArrayType", base)
        return base

    def _skip_type_args(self) -> None:
        """Permissively scan a balanced generic argument run, erasing it."""
        if not self._at("<"):
            return
        mark = self._pos
        depth = 0
        while True:
            tok = self._peek()
            if tok is None:
                self._pos = mark
                self._fail("unbalanced type arguments", "TypeRef")
            text = tok.text
            if text == "<":
                depth += 1
            elif text in (">", ">>", ">>>"):
                depth -= len(text)
                if depth < 0:
                    self._pos = mark
                    self._fail("unbalanced type arguments", "TypeRef")
            elif text == "?" or text in ("extends", "super", ",", ".", "[", "]") \
                    or tok.kind is TokenKind.IDENTIFIER or text in PRIMITIVE_TYPES \
                    or text == "&":
                pass
            else:
                self._pos = mark
                self._fail(f"unexpected token {text!r} in type arguments", "TypeRef")
            self._pos += 1
            if depth == 0:
                return

    # -- statements ----------------------------------------------------------

    def _block(self) -> TreeNode:
        self._expect("{", "Block")
        stmts: list[TreeNode] = []
        while not self._at("}"):
            if self._peek() is None:
                self._fail("unexpected end of input in block", "Block")
            stmts.append(self._statement())
        self._expect("}", "Block")
        return TreeNode("Block", children=tuple(stmts))

    def _statement(self) -> TreeNode:
        tok = self._peek()
        if tok is None:
            self._fail("expected statement", "Block")
        text = tok.text
        if text == "{":
            return self._block()
        if text == ";":
            self._next("EmptyStmt")
            return TreeNode("EmptyStmt")
        if text == "if":
            return self._if_stmt()
        if text == "while":
            return self._while_stmt()
        if text == "for":
            return self._for_stmt()
        if text == "try":
            return self._try_stmt()
        if text == "return":
            self._next("ReturnStmt")
            if self._at(";"):
                self._next("ReturnStmt")
                return TreeNode("ReturnStmt")
            expr = self._expression()
            self._expect(";", "ReturnStmt")
            return _node("ReturnStmt", expr)
        if text == "throw":
            self._next("ThrowStmt")
            expr = self._expression()
            self._expect(";", "ThrowStmt")
            return _node("ThrowStmt", expr)
        if text == "break":
            self._next("BreakStmt")
            self._expect(";", "BreakStmt")
            return TreeNode("BreakStmt")
        if text == "continue":
            self._next("ContinueStmt")
            self._expect(";", "ContinueStmt")
            return TreeNode("ContinueStmt")
        decl = self._try_local_var_decl()
        if decl is not None:
            return decl
        expr = self._expression()
        self._expect(";", "ExprStmt")
        return _node("ExprStmt", expr)

    def _try_local_var_decl(self, *, consume_semi: bool = True) -> TreeNode | None:
        mark = self._pos
        mods: list[TreeNode] = []
        while self._at("final") or self._at("@"):
            if self._at("@"):
                mods.append(self._annotation())
            else:
                mods.append(_leaf("Modifier", self._next("LocalVarDecl").text))
        try:
            decl_type = self._type("LocalVarDecl")
            if not self._at_kind(TokenKind.IDENTIFIER):
                raise ParseError("not a declaration", 0, 0, "LocalVarDecl")
            declarators = self._var_declarators("LocalVarDecl")
            if consume_semi:
                self._expect(";", "LocalVarDecl")
        except ParseError:
            self._pos = mark
            return None
        return TreeNode("LocalVarDecl", children=tuple(mods) + (decl_type, *declarators))

    def _var_declarators(self, production: str) -> list[TreeNode]:
        declarators = [self._var_declarator(production)]
        while self._at(","):
            self._next(production)
            declarators.append(self._var_declarator(production))
        return declarators

    def _var_declarator(self, production: str) -> TreeNode:
        name = _leaf("Name", self._expect_identifier(production).text)
        while self._at("[") and self._peek(1) is not None and self._peek(1).text == "]":
            self._next(production)
            self._next(production)
        if self._at("="):
            self._next(production)
            init = self._array_init() if self._at("{") else self._expression()
            return _node("VarDeclarator", name, init)
        return _node("VarDeclarator", name)

    def _if_stmt(self) -> TreeNode:
        self._expect("if", "IfStmt")
        self._expect("(", "IfStmt")
        cond = self._expression()
        self._expect(")", "IfStmt")
        then = self._statement()
        if self._at("else"):
            self._next("IfStmt")
            return _node("IfStmt", cond, then, self._statement())
        return _node("IfStmt", cond, then)

    def _while_stmt(self) -> TreeNode:
        self._expect("while", "WhileStmt")
        self._expect("(", "WhileStmt")
        cond = self._expression()
        self._expect(")", "WhileStmt")
        return _node("WhileStmt", cond, self._statement())

    def _for_stmt(self) -> TreeNode:
        self._expect("for", "ForStmt")
        self._expect("(", "ForStmt")
        # Enhanced for: "[final] type Identifier :".
        mark = self._pos
        try:
            if self._at("final"):
                self._next("ForEachStmt")
            loop_type = self._type("ForEachStmt")
            name_tok = self._expect_identifier("ForEachStmt")
            self._expect(":", "ForEachStmt")
            iterable = self._expression()
            self._expect(")", "ForEachStmt")
            body = self._statement()
            return _node("ForEachStmt", loop_type, _leaf("Name", name_tok.text), iterable, body)
        except ParseError:
            self._pos = mark
        init_items: list[TreeNode] = []
        if not self._at(";"):
            decl = self._try_local_var_decl(consume_semi=False)
            if decl is not None:
                init_items.append(decl)
            else:
                init_items.append(self._expression())
                while self._at(","):
                    self._next("ForStmt")
                    init_items.append(self._expression())
        self._expect(";", "ForStmt")
        cond_items: list[TreeNode] = []
        if not self._at(";"):
            cond_items.append(self._expression())
        self._expect(";", "ForStmt")
        update_items: list[TreeNode] = []
        if not self._at(")"):
            update_items.append(self._expression())
            while self._at(","):
                self._next("ForStmt")
                update_items.append(self._expression())
        self._expect(")", "ForStmt")
        body = self._statement()
        return _node(
            "ForStmt",
            TreeNode("ForInit", children=tuple(init_items)),
            TreeNode("ForCond", children=tuple(cond_items)),
            TreeNode("ForUpdate", children=tuple(update_items)),
            body,
        )

    def _try_stmt(self) -> TreeNode:
        self._expect("try", "TryStmt")
        children: list[TreeNode] = []
        if self._at("("):
            self._next("TryStmt")
            resources: list[TreeNode] = []
            while not self._at(")"):
                decl = self._try_local_var_decl(consume_semi=False)
                if decl is None:
                    self._fail("expected resource declaration", "TryStmt")
                resources.append(decl)
                if self._at(";"):
                    self._next("TryStmt")
            self._expect(")", "TryStmt")
            children.append(TreeNode("Resources", children=tuple(resources)))
        children.append(self._block())
        saw_handler = False
        while self._at("catch"):
            children.append(self._catch_clause())
            saw_handler = True
        if self._at("finally"):
            self._next("TryStmt")
            children.append(_node("FinallyClause", self._block()))
            saw_handler = True
        if not saw_handler and not children[0].label == "Resources":
            self._fail("try statement requires catch or finally", "TryStmt")
        return TreeNode("TryStmt", children=tuple(children))

    def _catch_clause(self) -> TreeNode:
        self._expect("catch", "CatchClause")
        self._expect("(", "CatchClause")
        if self._at("final"):
            self._next("CatchClause")
        types = [self._type("CatchClause")]
        while self._at("|"):
            self._next("CatchClause")
            types.append(self._type("CatchClause"))
        name = _leaf("Name", self._expect_identifier("CatchClause").text)
        self._expect(")", "CatchClause")
        return TreeNode("CatchClause", children=(*types, name, self._block()))

    # -- expressions ----------------------------------------------------------

    def _expression(self) -> TreeNode:
        return self._assignment()

    def _assignment(self) -> TreeNode:
        left = self._conditional()
        if self._at(*_ASSIGN_OPS):
            if left.label not in ("Name", "FieldAccess", "ArrayAccess"):
                self._fail("invalid assignment target", "Assignment")
            op = _leaf("Op", self._next("Assignment").text)
            right = self._array_init() if self._at("{") else self._assignment()
            return _node("Assignment", left, op, right)
        return left

    def _conditional(self) -> TreeNode:
        cond = self._binary(0)
        if self._at("?"):
            self._next("Conditional")
            then = self._expression()
            self._expect(":", "Conditional")
            return _node("Conditional", cond, then, self._conditional())
        return cond

    _BINARY_LEVELS: tuple[tuple[str, ...], ...] = (
        ("||",),
        ("&&",),
        ("|",),
        ("^",),
        ("&",),
        ("==", "!="),
        ("<", ">", "<=", ">=", "instanceof"),
        ("<<", ">>", ">>>"),
        ("+", "-"),
        ("*", "/", "%"),
    )

    def _binary(self, level: int) -> TreeNode:
        if level >= len(self._BINARY_LEVELS):
            return self._unary()
        ops = self._BINARY_LEVELS[level]
        left = self._binary(level + 1)
        while self._at(*ops):
            op_tok = self._next("BinaryExpr")
            if op_tok.text == "instanceof":
                right: TreeNode = self._type("BinaryExpr")
            else:
                right = self._binary(level + 1)
            left = _node("BinaryExpr", left, _leaf("Op", op_tok.text), right)
        return left

    def _unary(self) -> TreeNode:
        tok = self._peek()
        if tok is not None and tok.text in ("+", "-", "!", "~", "++", "--"):
            op = _leaf("Op", self._next("UnaryExpr").text)
            return _node("UnaryExpr", op, self._unary())
        cast = self._try_cast()
        if cast is not None:
            return cast
        return self._postfix()

    def _try_cast(self) -> TreeNode | None:
        if not self._at("("):
            return None
        mark = self._pos
        self._next("Cast")
        try:
            cast_type = self._type("Cast")
            self._expect(")", "Cast")
        except ParseError:
            self._pos = mark
            return None
        nxt = self._peek()
        is_primitive = cast_type.label == "TypeRef" and cast_type.leaf_text in PRIMITIVE_TYPES
        follows = nxt is not None and (
            nxt.kind in _CAST_FOLLOW_KINDS or nxt.text in _CAST_FOLLOW_TEXTS
        )
        if not follows and not (is_primitive and nxt is not None and nxt.text in ("+", "-")):
            self._pos = mark
            return None
        return _node("Cast", cast_type, self._unary())

    def _postfix(self) -> TreeNode:
        expr = self._primary()
        while True:
            if self._at("."):
                nxt = self._peek(1)
                if nxt is None:
                    self._fail("unexpected end of input after '.'", "FieldAccess")
                if nxt.text == "<":
                    # explicit type arguments on a call: obj.<T>method(...)
                    self._next("MethodCall")
                    self._skip_type_args()
                    name = self._expect_identifier("MethodCall")
                    expr = _node("MethodCall", expr, _leaf("MethodName", name.text), self._args())
                    continue
                if nxt.kind is TokenKind.IDENTIFIER or nxt.text in ("class", "this"):
                    self._next("FieldAccess")
                    name_tok = self._next("FieldAccess")
                    if self._at("("):
                        expr = _node("MethodCall", expr, _leaf("MethodName", name_tok.text), self._args())
                    else:
                        expr = _node("FieldAccess", expr, _leaf("FieldName", name_tok.text))
                    continue
                self._fail(f"unexpected token {nxt.text!r} after '.'", "FieldAccess")
            elif self._at("["):
                self._next("ArrayAccess")
                index = self._expression()
                self._expect("]", "ArrayAccess")
                expr = _node("ArrayAccess", expr, index)
            elif self._at("++", "--"):
                expr = _node("PostfixExpr", expr, _leaf("Op", self._next("PostfixExpr").text))
            else:
                return expr

    def _args(self) -> TreeNode:
        self._expect("(", "Args")
        args: list[TreeNode] = []
        while not self._at(")"):
            args.append(self._expression())
            if self._at(","):
                self._next("Args")
        self._expect(")", "Args")
        return TreeNode("Args", children=tuple(args))

    def _primary(self) -> TreeNode:
        tok = self._peek()
        if tok is None:
            self._fail("expected expression", "Expression")
        if tok.kind is TokenKind.LITERAL or tok.text in ("true", "false", "null"):
            self._next("LiteralNode")
            return _leaf("LiteralNode", tok.text)
        if tok.text == "(":
            self._next("Expression")
            expr = self._expression()
            self._expect(")", "Expression")
            return expr
        if tok.text == "new":
            return self._creator()
        if tok.text in ("this", "super"):
            self._next("Name")
            if self._at("("):
                # explicit constructor invocation
                return _node("MethodCall", _leaf("MethodName", tok.text), self._args())
            return _leaf("Name", tok.text)
        if tok.kind is TokenKind.IDENTIFIER:
            self._next("Name")
            if self._at("("):
                return _node("MethodCall", _leaf("MethodName", tok.text), self._args())
            return _leaf("Name", tok.text)
        self._fail(f"unexpected token {tok.text!r}", "Expression")

    def _creator(self) -> TreeNode:
        self._expect("new", "ObjectCreation")
        base = self._creator_type()
        if self._at("["):
            dims: list[TreeNode] = []
            saw_empty = False
            while self._at("["):
                self._next("ArrayCreation")
                if self._at("]"):
                    self._next("ArrayCreation")
                    saw_empty = True
                else:
                    dims.append(self._expression())
                    self._expect("]", "ArrayCreation")
            if saw_empty and not dims:
                init = self._array_init()
                return _node("ArrayCreation", base, init)
            return TreeNode("ArrayCreation", children=(base, *dims))
        args = self._args()
        if self._at("{"):
            return _node("ObjectCreation", base, args, self._class_body())
        return _node("ObjectCreation", base, args)

    def _creator_type(self) -> TreeNode:
        tok = self._peek()
        if tok is None:
            self._fail("expected type after 'new'", "ObjectCreation")
        if tok.text in PRIMITIVE_TYPES:
            self._next("ObjectCreation")
            return _leaf("TypeRef", tok.text)
        base = _leaf("TypeRef", self._qualified_name("ObjectCreation"))
        self._skip_type_args()
        return base

    def _array_init(self) -> TreeNode:
        self._expect("{", "ArrayInit")
        items: list[TreeNode] = []
        while not self._at("}"):
            items.append(self._array_init() if self._at("{") else self._expression())
            if self._at(","):
                self._next("ArrayInit")
        self._expect("}", "ArrayInit")
        return TreeNode("ArrayInit", children=tuple(items))
