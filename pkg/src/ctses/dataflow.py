"""Def-use dataflow extraction and matching.

Extraction is an intra-method, purely lexical approximation: statements
are scanned in source order, the most recent textual definition of a name
wins, and branches of if/try are visited in order with no join analysis.
Variable names are normalized to ``var_k`` in first-definition order
(restarting for every method) so that consistent renaming of locals leaves
the extracted graph unchanged. Names that are never defined locally
(fields, method parameters, class names) read from the synthetic external
definition ``var_ext``.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

from .syntax import SyntaxTree, TreeNode

EXTERNAL_DEF = "var_ext"


class Relation(enum.Enum):
    """How a read relates to a definition."""

    COMES_FROM = "ComesFrom"        # plain read of a variable's current value
    COMPUTED_FROM = "ComputedFrom"  # read feeds the right-hand side of a definition


#: A normalized def-use edge: (defining variable, using variable, relation value).
Edge = tuple[str, str, str]


@dataclass(frozen=True)
class DataflowGraph:
    """Multiset of normalized def-use edges for one compilation unit."""

    edges: Counter
    var_count: int


def extract_dataflow(tree: SyntaxTree) -> DataflowGraph:
    """Extract the normalized def-use edge multiset from a parsed tree.

    Scopes are method bodies, constructor bodies, initializer blocks, and
    any loose statements at the top level of the compilation unit (which
    together form one script-like scope). Definitions are local variable
    declarations, simple-name assignments (including compound assignment
    and increment/decrement), enhanced-for loop variables, and catch
    parameters.
    """
    edges: Counter = Counter()
    var_count = 0
    for scope_stmts in _scopes(tree.root):
        walker = _ScopeWalker(edges)
        for stmt in scope_stmts:
            walker.walk_stmt(stmt)
        var_count += walker.local_count
    return DataflowGraph(edges=edges, var_count=var_count)


def dataflow_match(
    candidate: DataflowGraph,
    reference: DataflowGraph,
    *,
    empty_fallback: float = 1.0,
    collapse_relations: bool = False,
) -> float:
    """Fraction of candidate edges present in the reference multiset.

    Returns 1.0 when both edge multisets are empty and ``empty_fallback``
    when only the candidate's is empty (callers flag that condition).
    ``collapse_relations`` erases the ComesFrom/ComputedFrom distinction
    before matching.
    """
    cand = _edge_multiset(candidate, collapse_relations)
    ref = _edge_multiset(reference, collapse_relations)
    if not cand:
        return 1.0 if not ref else empty_fallback
    matched = sum((cand & ref).values())
    return matched / sum(cand.values())


def edge_lines(graph: DataflowGraph) -> list[str]:
    """Render edges as sorted ``def_var relation use_var`` debug lines."""
    lines = []
    for (def_var, use_var, relation), count in sorted(graph.edges.items()):
        lines.extend([f"{def_var} {relation} {use_var}"] * count)
    return lines


def _edge_multiset(graph: DataflowGraph, collapse: bool) -> Counter:
    if not collapse:
        return graph.edges
    out: Counter = Counter()
    for (def_var, use_var, _relation), count in graph.edges.items():
        out[(def_var, use_var)] += count
    return out


# ---------------------------------------------------------------------------
# Scope discovery
# ---------------------------------------------------------------------------

_SCOPE_OWNERS = ("MethodDecl", "CtorDecl", "InitBlock")
_DECL_LABELS = ("ClassDecl", "MethodDecl", "CtorDecl", "InitBlock", "FieldDecl")


def _scopes(root: TreeNode):
    """Yield the statement list of every scope in the tree."""
    loose = [c for c in root.children if c.label not in _DECL_LABELS
             and c.label not in ("PackageDecl", "ImportDecl", "Annotation", "Modifier")]
    if loose:
        yield loose
    for owner in _find_scope_owners(root):
        body = next((c for c in owner.children if c.label == "Block"), None)
        if body is not None:
            yield list(body.children)


def _find_scope_owners(node: TreeNode):
    for child in node.children:
        if child.label in _SCOPE_OWNERS:
            yield child
        yield from _find_scope_owners(child)


# ---------------------------------------------------------------------------
# Per-scope walking
# ---------------------------------------------------------------------------

# Leaf labels that are never variable reads.
_NON_READ_LEAVES = ("MethodName", "FieldName", "TypeRef", "Modifier", "Op",
                    "LiteralNode", "PackageDecl", "ImportDecl")
# Internal nodes whose bodies open a different scope.
_SCOPE_BARRIERS = ("ClassDecl", "MethodDecl", "CtorDecl", "InitBlock")


class _ScopeWalker:
    def __init__(self, edges: Counter) -> None:
        self._edges = edges
        self._defs: dict[str, str] = {}
        self.local_count = 0

    # -- definitions -------------------------------------------------------

    def _pending_id(self, name: str) -> str:
        return self._defs.get(name, f"var_{self.local_count}")

    def _define(self, name: str) -> None:
        if name not in self._defs:
            self._defs[name] = f"var_{self.local_count}"
            self.local_count += 1

    def _emit(self, def_var: str, use_var: str, relation: Relation) -> None:
        self._edges[(def_var, use_var, relation.value)] += 1

    # -- statements -----------------------------------------------------------

    def walk_stmt(self, node: TreeNode) -> None:
        label = node.label
        if label == "LocalVarDecl":
            for declarator in node.children:
                if declarator.label == "VarDeclarator":
                    self._walk_declarator(declarator)
        elif label == "ExprStmt":
            self.walk_expr(node.children[0], feeding=None)
        elif label == "IfStmt":
            self.walk_expr(node.children[0], feeding=None)
            for branch in node.children[1:]:
                self.walk_stmt(branch)
        elif label == "WhileStmt":
            self.walk_expr(node.children[0], feeding=None)
            self.walk_stmt(node.children[1])
        elif label == "ForStmt":
            init, cond, update, body = node.children
            for item in init.children:
                self.walk_stmt(item) if item.label == "LocalVarDecl" else \
                    self.walk_expr(item, feeding=None)
            for item in cond.children:
                self.walk_expr(item, feeding=None)
            for item in update.children:
                self.walk_expr(item, feeding=None)
            self.walk_stmt(body)
        elif label == "ForEachStmt":
            _type, name, iterable, body = node.children
            pending = self._pending_id(name.leaf_text or "")
            self.walk_expr(iterable, feeding=pending)
            self._define(name.leaf_text or "")
            self.walk_stmt(body)
        elif label == "TryStmt":
            for child in node.children:
                if child.label == "Resources":
                    for decl in child.children:
                        self.walk_stmt(decl)
                elif child.label == "Block":
                    self.walk_stmt(child)
                elif child.label == "CatchClause":
                    param = next(c for c in child.children if c.label == "Name")
                    self._define(param.leaf_text or "")
                    self.walk_stmt(child.children[-1])
                elif child.label == "FinallyClause":
                    self.walk_stmt(child.children[0])
        elif label in ("ReturnStmt", "ThrowStmt"):
            for child in node.children:
                self.walk_expr(child, feeding=None)
        elif label == "Block":
            for child in node.children:
                self.walk_stmt(child)
        elif label in _SCOPE_BARRIERS or label in ("BreakStmt", "ContinueStmt", "EmptyStmt",
                                                   "Annotation", "FieldDecl"):
            return
        else:
            self.walk_expr(node, feeding=None)

    def _walk_declarator(self, declarator: TreeNode) -> None:
        name = declarator.children[0].leaf_text or ""
        pending = self._pending_id(name)
        if len(declarator.children) > 1:
            self.walk_expr(declarator.children[1], feeding=pending)
        self._define(name)

    # -- expressions ------------------------------------------------------------

    def walk_expr(self, node: TreeNode, feeding: str | None) -> None:
        label = node.label
        if label == "Name":
            name = node.leaf_text or ""
            def_id = self._defs.get(name, EXTERNAL_DEF)
            if feeding is not None:
                self._emit(def_id, feeding, Relation.COMPUTED_FROM)
            else:
                self._emit(def_id, def_id, Relation.COMES_FROM)
            return
        if label in _NON_READ_LEAVES or node.is_leaf:
            return
        if label == "Assignment":
            target, op, value = node.children
            if target.label == "Name":
                name = target.leaf_text or ""
                pending = self._pending_id(name)
                if op.leaf_text != "=":
                    old = self._defs.get(name, EXTERNAL_DEF)
                    self._emit(old, pending, Relation.COMPUTED_FROM)
                self.walk_expr(value, feeding=pending)
                self._define(name)
            else:
                self.walk_expr(target, feeding=None)
                self.walk_expr(value, feeding=None)
            return
        if label in ("UnaryExpr", "PostfixExpr"):
            op = next(c for c in node.children if c.label == "Op")
            operand = next(c for c in node.children if c.label != "Op")
            if op.leaf_text in ("++", "--") and operand.label == "Name":
                name = operand.leaf_text or ""
                pending = self._pending_id(name)
                old = self._defs.get(name, EXTERNAL_DEF)
                self._emit(old, pending, Relation.COMPUTED_FROM)
                self._define(name)
            else:
                self.walk_expr(operand, feeding=feeding)
            return
        if label == "ObjectCreation":
            # walk the arguments but never an anonymous class body
            for child in node.children:
                if child.label == "Args":
                    self.walk_expr(child, feeding=feeding)
            return
        if label in _SCOPE_BARRIERS:
            return
        for child in node.children:
            self.walk_expr(child, feeding=feeding)
