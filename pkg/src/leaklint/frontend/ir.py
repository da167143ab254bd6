"""Normalized per-method IR produced by the Java parser.

Statements keep their nested block structure (the CFG builder walks the
tree); ``MethodIR.flatten()`` exposes the same statements as a flat,
source-ordered sequence with region markers for try/catch/finally.
Constructs outside the supported subset are lowered to opaque statements
or expressions instead of being rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field


# -- Expressions -------------------------------------------------------------


@dataclass
class Expr:
    line: int = 0


@dataclass
class Literal(Expr):
    text: str = ""


@dataclass
class Var(Expr):
    """An identifier; may denote a binding or a type name (resolved later)."""

    name: str = ""


@dataclass
class FieldAccess(Expr):
    owner: Expr | None = None  # None means implicit/explicit `this`
    name: str = ""


@dataclass
class Call(Expr):
    receiver: Expr | None = None  # None means a bare call on the enclosing class
    method: str = ""
    args: list[Expr] = field(default_factory=list)


@dataclass
class New(Expr):
    type_name: str = ""
    args: list[Expr] = field(default_factory=list)
    anon_class: str | None = None  # synthetic name when a body was attached


@dataclass
class Unary(Expr):
    op: str = ""
    operand: Expr | None = None


@dataclass
class Binary(Expr):
    op: str = ""
    left: Expr | None = None
    right: Expr | None = None


@dataclass
class Ternary(Expr):
    cond: Expr | None = None
    then: Expr | None = None
    other: Expr | None = None


@dataclass
class Opaque(Expr):
    text: str = ""
    has_call: bool = False


def expr_contains_call(expr: Expr | None) -> bool:
    """True when evaluating the expression can invoke a method (may throw)."""
    if expr is None:
        return False
    if isinstance(expr, (Call, New)):
        return True
    if isinstance(expr, Opaque):
        return expr.has_call
    if isinstance(expr, FieldAccess):
        return expr_contains_call(expr.owner)
    if isinstance(expr, Unary):
        return expr_contains_call(expr.operand)
    if isinstance(expr, Binary):
        return expr_contains_call(expr.left) or expr_contains_call(expr.right)
    if isinstance(expr, Ternary):
        return any(expr_contains_call(e) for e in (expr.cond, expr.then, expr.other))
    return False


def walk_expr(expr: Expr | None):
    """Yield the expression and all sub-expressions, outside in."""
    if expr is None:
        return
    yield expr
    if isinstance(expr, Call):
        yield from walk_expr(expr.receiver)
        for arg in expr.args:
            yield from walk_expr(arg)
    elif isinstance(expr, New):
        for arg in expr.args:
            yield from walk_expr(arg)
    elif isinstance(expr, FieldAccess):
        yield from walk_expr(expr.owner)
    elif isinstance(expr, Unary):
        yield from walk_expr(expr.operand)
    elif isinstance(expr, Binary):
        yield from walk_expr(expr.left)
        yield from walk_expr(expr.right)
    elif isinstance(expr, Ternary):
        for e in (expr.cond, expr.then, expr.other):
            yield from walk_expr(e)


# -- Statements ---------------------------------------------------------------


@dataclass
class Stmt:
    line: int = 0


@dataclass
class AssignStmt(Stmt):
    """`target = rhs`; also covers local declarations with an initializer.

    ``target`` is a Var or FieldAccess; None when the left side is not a
    trackable binding (array slot, chained lvalue).
    """

    target: Expr | None = None
    rhs: Expr | None = None
    declared_type: str | None = None


@dataclass
class ExprStmt(Stmt):
    expr: Expr | None = None


@dataclass
class IfStmt(Stmt):
    cond: Expr | None = None
    then_body: list[Stmt] = field(default_factory=list)
    else_body: list[Stmt] = field(default_factory=list)


@dataclass
class LoopStmt(Stmt):
    """while/for/do-while, normalized to a guarded loop with a back edge."""

    cond: Expr | None = None
    body: list[Stmt] = field(default_factory=list)


@dataclass
class CatchClause:
    param_name: str = ""
    param_type: str = ""
    body: list[Stmt] = field(default_factory=list)
    line: int = 0


@dataclass
class TryStmt(Stmt):
    body: list[Stmt] = field(default_factory=list)
    catches: list[CatchClause] = field(default_factory=list)
    finally_body: list[Stmt] | None = None


@dataclass
class ReturnStmt(Stmt):
    expr: Expr | None = None


@dataclass
class ThrowStmt(Stmt):
    expr: Expr | None = None


@dataclass
class OtherStmt(Stmt):
    """Anything outside the supported subset, kept opaque."""

    text: str = ""
    has_call: bool = False


# Region markers produced by MethodIR.flatten().
@dataclass
class Marker:
    kind: str  # TryEnter | CatchEnter | FinallyEnter | RegionExit
    line: int = 0


def stmt_may_throw(stmt: Stmt) -> bool:
    if isinstance(stmt, ThrowStmt):
        return True
    if isinstance(stmt, AssignStmt):
        return expr_contains_call(stmt.rhs) or expr_contains_call(stmt.target)
    if isinstance(stmt, ExprStmt):
        return expr_contains_call(stmt.expr)
    if isinstance(stmt, (IfStmt, LoopStmt)):
        return expr_contains_call(stmt.cond)
    if isinstance(stmt, ReturnStmt):
        return expr_contains_call(stmt.expr)
    if isinstance(stmt, OtherStmt):
        return stmt.has_call
    return False


# -- Containers ----------------------------------------------------------------


@dataclass
class MethodIR:
    class_name: str
    name: str
    params: list[tuple[str, str]]  # (name, declared type)
    body: list[Stmt] = field(default_factory=list)
    locals: dict[str, str] = field(default_factory=dict)
    line_start: int = 0
    line_end: int = 0

    @property
    def arity(self) -> int:
        return len(self.params)

    @property
    def method_id(self) -> str:
        return f"{self.class_name}#{self.name}/{self.arity}"

    def declared_type_of(self, name: str) -> str | None:
        for pname, ptype in self.params:
            if pname == name:
                return ptype
        return self.locals.get(name)

    def flatten(self):
        """Source-ordered statement sequence with region markers."""
        yield from _flatten(self.body)


def _flatten(stmts: list[Stmt]):
    for stmt in stmts:
        if isinstance(stmt, IfStmt):
            yield stmt
            yield from _flatten(stmt.then_body)
            yield from _flatten(stmt.else_body)
        elif isinstance(stmt, LoopStmt):
            yield stmt
            yield from _flatten(stmt.body)
        elif isinstance(stmt, TryStmt):
            yield Marker("TryEnter", stmt.line)
            yield from _flatten(stmt.body)
            for catch in stmt.catches:
                yield Marker("CatchEnter", catch.line)
                yield from _flatten(catch.body)
            if stmt.finally_body is not None:
                yield Marker("FinallyEnter", stmt.line)
                yield from _flatten(stmt.finally_body)
            yield Marker("RegionExit", stmt.line)
        else:
            yield stmt


@dataclass
class ClassDecl:
    name: str  # binary-style name; nested and anonymous classes use Outer$Inner
    superclass: str | None = None
    interfaces: list[str] = field(default_factory=list)
    fields: dict[str, str] = field(default_factory=dict)  # name -> declared type
    methods: list[MethodIR] = field(default_factory=list)
    line: int = 0


@dataclass
class SourceUnit:
    path: str
    classes: list[ClassDecl] = field(default_factory=list)
