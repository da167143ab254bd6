"""Recursive-descent parser for the supported Java subset.

Structural constructs (class and method declarations) are parsed strictly
and raise JavaSyntaxError on malformed input.  Inside method bodies the
parser is permissive: statements it cannot understand are consumed up to a
safe boundary and lowered to opaque statements, so a single unusual
construct never rejects a whole file.

Lowerings applied while parsing:

* switch statements become if/else-if chains (fall-through is ignored);
* statement-level ternaries become if/else with one assignment or return
  per branch;
* try-with-resources becomes explicit assignments plus a synthesized
  finally block that closes each resource;
* do/while and enhanced-for become guarded loops;
* anonymous class bodies are lifted into synthetic ``Outer$N`` class
  declarations and analyzed as independent classes.
"""

from __future__ import annotations

from . import ir
from .lexer import CHARLIT, EOF, IDENT, NUMBER, PUNCT, STRING, Token, tokenize
from ..errors import JavaSyntaxError

PRIMITIVES = {"int", "long", "short", "byte", "char", "boolean", "float", "double", "void"}

MODIFIERS = {
    "public", "private", "protected", "static", "final", "abstract",
    "synchronized", "native", "transient", "volatile", "strictfp", "default",
}

# Tokens that can never begin a local declaration.
_NON_DECL_STARTS = {
    "new", "this", "super", "true", "false", "null",
    "if", "while", "for", "do", "try", "return", "throw", "switch",
    "break", "continue", "assert", "else", "case",
}


class _Parser:
    def __init__(self, source: str, path: str):
        self.tokens = tokenize(source)
        self.pos = 0
        self.path = path
        self.classes: list[ir.ClassDecl] = []
        self._anon_counters: dict[str, int] = {}
        self._class_stack: list[str] = []
        self._method: ir.MethodIR | None = None

    # -- token helpers ------------------------------------------------------

    def peek(self, k: int = 0) -> Token:
        idx = min(self.pos + k, len(self.tokens) - 1)
        return self.tokens[idx]

    def at(self, text: str) -> bool:
        return self.peek().text == text

    def at_kind(self, kind: str) -> bool:
        return self.peek().kind == kind

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != EOF:
            self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text:
            self.error(f"expected {text!r}, found {tok.text or '<eof>'!r}")
        return self.advance()

    def expect_ident(self) -> Token:
        tok = self.peek()
        if tok.kind != IDENT:
            self.error(f"expected identifier, found {tok.text or '<eof>'!r}")
        return self.advance()

    def error(self, message: str):
        tok = self.peek()
        raise JavaSyntaxError(message, tok.line, tok.col)

    # -- unit level -----------------------------------------------------------

    def parse_unit(self) -> ir.SourceUnit:
        while self.at("package") or self.at("import"):
            while not self.at(";") and not self.at_kind(EOF):
                self.advance()
            self.expect(";")
        while not self.at_kind(EOF):
            if self.at(";"):
                self.advance()
                continue
            self._parse_type_decl(outer=None)
        return ir.SourceUnit(path=self.path, classes=self.classes)

    def _skip_annotations(self):
        while self.at("@"):
            self.advance()
            self.expect_ident()
            while self.at("."):
                self.advance()
                self.expect_ident()
            if self.at("("):
                self._skip_balanced("(", ")")

    def _skip_modifiers(self) -> set[str]:
        mods: set[str] = set()
        while True:
            self._skip_annotations()
            if self.peek().text in MODIFIERS:
                mods.add(self.advance().text)
            else:
                return mods

    def _skip_balanced(self, open_t: str, close_t: str):
        self.expect(open_t)
        depth = 1
        while depth and not self.at_kind(EOF):
            tok = self.advance()
            if tok.text == open_t:
                depth += 1
            elif tok.text == close_t:
                depth -= 1
        if depth:
            self.error(f"unbalanced {open_t!r}")

    def _skip_generics(self):
        """Consume a balanced <...> group; error if it does not look like one."""
        self.expect("<")
        depth = 1
        while depth and not self.at_kind(EOF):
            text = self.peek().text
            if text in (";", "{", ")"):
                self.error("malformed generic argument list")
            tok = self.advance()
            if tok.text == "<":
                depth += 1
            elif tok.text == ">":
                depth -= 1
        if depth:
            self.error("unbalanced generic argument list")

    # -- types ----------------------------------------------------------------

    def _parse_type(self) -> str:
        self._skip_annotations()
        tok = self.peek()
        if tok.text in PRIMITIVES:
            self.advance()
            base = tok.text
        elif tok.kind == IDENT and tok.text not in _NON_DECL_STARTS:
            parts = [self.advance().text]
            if self.at("<"):
                self._skip_generics()
            while self.at(".") and self.peek(1).kind == IDENT:
                self.advance()
                parts.append(self.advance().text)
                if self.at("<"):
                    self._skip_generics()
            base = ".".join(parts)
        else:
            self.error("expected a type")
        while self.at("[") and self.peek(1).text == "]":
            self.advance()
            self.advance()
            base += "[]"
        return base

    # -- class level ------------------------------------------------------------

    def _parse_type_decl(self, outer: str | None) -> ir.ClassDecl:
        self._skip_modifiers()
        kind_tok = self.peek()
        if kind_tok.text == "@" and self.peek(1).text == "interface":
            self.advance()
            self.advance()
            name = self.expect_ident().text
            self._skip_balanced("{", "}")
            decl = ir.ClassDecl(name=self._qualify(outer, name), line=kind_tok.line)
            self.classes.append(decl)
            return decl
        if kind_tok.text not in ("class", "interface", "enum"):
            self.error("expected a class, interface, or enum declaration")
        kind = self.advance().text
        name_tok = self.expect_ident()
        decl = ir.ClassDecl(name=self._qualify(outer, name_tok.text), line=name_tok.line)
        if self.at("<"):
            self._skip_generics()
        if self.at("extends"):
            self.advance()
            decl.superclass = self._parse_type()
            while self.at(","):  # interface multi-extends
                self.advance()
                decl.interfaces.append(self._parse_type())
        if self.at("implements"):
            self.advance()
            decl.interfaces.append(self._parse_type())
            while self.at(","):
                self.advance()
                decl.interfaces.append(self._parse_type())
        self.classes.append(decl)
        self._class_stack.append(decl.name)
        try:
            self._parse_class_body(decl, enum=(kind == "enum"))
        finally:
            self._class_stack.pop()
        return decl

    @staticmethod
    def _qualify(outer: str | None, name: str) -> str:
        return f"{outer}${name}" if outer else name

    def _parse_class_body(self, decl: ir.ClassDecl, enum: bool = False):
        self.expect("{")
        if enum:
            self._skip_enum_constants()
        while not self.at("}"):
            if self.at_kind(EOF):
                self.error("unterminated class body")
            self._parse_member(decl)
        self.expect("}")

    def _skip_enum_constants(self):
        while True:
            if self.at(";"):
                self.advance()
                return
            if self.at("}") or self.at_kind(EOF):
                return
            self._skip_annotations()
            if not self.at_kind(IDENT):
                return
            self.advance()
            if self.at("("):
                self._skip_balanced("(", ")")
            if self.at("{"):
                self._skip_balanced("{", "}")
            if self.at(","):
                self.advance()
            elif not self.at(";"):
                return

    def _parse_member(self, decl: ir.ClassDecl):
        if self.at(";"):
            self.advance()
            return
        mods = self._skip_modifiers()
        if self.peek().text in ("class", "interface", "enum") or (
            self.at("@") and self.peek(1).text == "interface"
        ):
            self._parse_type_decl(outer=decl.name)
            return
        if self.at("{"):  # instance or static initializer
            method = ir.MethodIR(
                class_name=decl.name,
                name="<initializer>",
                params=[],
                line_start=self.peek().line,
            )
            self._with_method(method, lambda: setattr(method, "body", self._parse_block()))
            method.line_end = self.tokens[self.pos - 1].line
            decl.methods.append(method)
            return
        if self.at("<"):
            self._skip_generics()
        simple_name = decl.name.rsplit("$", 1)[-1]
        if self.at(simple_name) and self.peek(1).text == "(":
            ctor_tok = self.advance()
            self._parse_method_rest(decl, "<init>", ctor_tok.line)
            return
        decl_type = self._parse_type()
        name_tok = self.expect_ident()
        if self.at("("):
            self._parse_method_rest(decl, name_tok.text, name_tok.line)
            return
        # Field declaration(s); initializer expressions are skipped.
        decl.fields[name_tok.text] = decl_type
        while True:
            if self.at("="):
                self.advance()
                self._skip_field_initializer()
            if self.at(","):
                self.advance()
                next_name = self.expect_ident()
                decl.fields[next_name.text] = decl_type
                continue
            break
        self.expect(";")

    def _skip_field_initializer(self):
        depth = 0
        while not self.at_kind(EOF):
            text = self.peek().text
            if depth == 0 and text in (";", ","):
                return
            if text in ("(", "{", "["):
                depth += 1
            elif text in (")", "}", "]"):
                if depth == 0:
                    return
                depth -= 1
            self.advance()

    def _parse_method_rest(self, decl: ir.ClassDecl, name: str, line: int):
        params: list[tuple[str, str]] = []
        self.expect("(")
        while not self.at(")"):
            self._skip_annotations()
            if self.at("final"):
                self.advance()
            ptype = self._parse_type()
            if self.at("..."):
                self.advance()
                ptype += "[]"
            pname = self.expect_ident().text
            while self.at("[") and self.peek(1).text == "]":
                self.advance()
                self.advance()
                ptype += "[]"
            params.append((pname, ptype))
            if self.at(","):
                self.advance()
            elif not self.at(")"):
                self.error("malformed parameter list")
        self.expect(")")
        if self.at("throws"):
            self.advance()
            self._parse_type()
            while self.at(","):
                self.advance()
                self._parse_type()
        method = ir.MethodIR(class_name=decl.name, name=name, params=params, line_start=line)
        if self.at(";"):
            self.advance()  # abstract/interface method
            method.line_end = line
        else:
            self._with_method(method, lambda: setattr(method, "body", self._parse_block()))
            method.line_end = self.tokens[self.pos - 1].line
        decl.methods.append(method)

    def _with_method(self, method: ir.MethodIR, action):
        prev = self._method
        self._method = method
        try:
            action()
        finally:
            self._method = prev

    # -- statements ---------------------------------------------------------------

    def _parse_block(self) -> list[ir.Stmt]:
        self.expect("{")
        stmts: list[ir.Stmt] = []
        while not self.at("}"):
            if self.at_kind(EOF):
                self.error("unterminated block")
            stmts.extend(self._parse_statement())
        self.expect("}")
        return stmts

    def _parse_statement(self) -> list[ir.Stmt]:
        start = self.pos
        try:
            return self._statement_inner()
        except JavaSyntaxError:
            self.pos = start
            return [self._recover_statement()]

    def _recover_statement(self) -> ir.OtherStmt:
        line = self.peek().line
        depth = 0
        texts: list[str] = []
        has_call = False
        prev_ident = False
        while not self.at_kind(EOF):
            tok = self.peek()
            if depth == 0 and tok.text in ("}", ")", "]"):
                break
            self.advance()
            if prev_ident and tok.text == "(":
                has_call = True
            prev_ident = tok.kind == IDENT
            texts.append(tok.text)
            if tok.text in ("(", "{", "["):
                depth += 1
            elif tok.text in (")", "}", "]"):
                depth -= 1
                if depth == 0 and tok.text == "}":
                    break
            elif tok.text == ";" and depth == 0:
                break
        return ir.OtherStmt(line=line, text=" ".join(texts), has_call=has_call)

    def _statement_inner(self) -> list[ir.Stmt]:
        tok = self.peek()
        text = tok.text

        if text == ";":
            self.advance()
            return []
        if text == "{":
            return self._parse_block()
        if text == "if":
            return [self._parse_if()]
        if text == "while":
            self.advance()
            self.expect("(")
            cond = self._parse_expr()
            self.expect(")")
            body = self._parse_statement_as_block()
            return [ir.LoopStmt(line=tok.line, cond=cond, body=body)]
        if text == "do":
            self.advance()
            body = self._parse_statement_as_block()
            self.expect("while")
            self.expect("(")
            cond = self._parse_expr()
            self.expect(")")
            self.expect(";")
            return [ir.LoopStmt(line=tok.line, cond=cond, body=body)]
        if text == "for":
            return self._parse_for(tok)
        if text == "try":
            return self._parse_try(tok)
        if text == "return":
            self.advance()
            expr = None if self.at(";") else self._parse_expr()
            self.expect(";")
            if isinstance(expr, ir.Ternary):
                return [
                    ir.IfStmt(
                        line=tok.line,
                        cond=expr.cond,
                        then_body=[ir.ReturnStmt(line=tok.line, expr=expr.then)],
                        else_body=[ir.ReturnStmt(line=tok.line, expr=expr.other)],
                    )
                ]
            return [ir.ReturnStmt(line=tok.line, expr=expr)]
        if text == "throw":
            self.advance()
            expr = self._parse_expr()
            self.expect(";")
            return [ir.ThrowStmt(line=tok.line, expr=expr)]
        if text in ("break", "continue"):
            self.advance()
            if self.at_kind(IDENT):
                self.advance()
            self.expect(";")
            return [ir.OtherStmt(line=tok.line, text=text)]
        if text == "switch":
            return self._parse_switch(tok)
        if text == "synchronized" and self.peek(1).text == "(":
            self.advance()
            self.expect("(")
            monitor = self._parse_expr()
            self.expect(")")
            body = self._parse_block()
            return [ir.ExprStmt(line=tok.line, expr=monitor), *body]
        if text == "assert":
            self.error("assert statements are outside the supported subset")

        decl_stmts = self._try_parse_local_decl()
        if decl_stmts is not None:
            return decl_stmts
        return self._parse_expr_statement()

    def _parse_statement_as_block(self) -> list[ir.Stmt]:
        if self.at("{"):
            return self._parse_block()
        return self._parse_statement()

    def _parse_if(self) -> ir.IfStmt:
        tok = self.expect("if")
        self.expect("(")
        cond = self._parse_expr()
        self.expect(")")
        then_body = self._parse_statement_as_block()
        else_body: list[ir.Stmt] = []
        if self.at("else"):
            self.advance()
            else_body = self._parse_statement_as_block()
        return ir.IfStmt(line=tok.line, cond=cond, then_body=then_body, else_body=else_body)

    def _parse_for(self, tok: Token) -> list[ir.Stmt]:
        self.advance()
        self.expect("(")
        # Enhanced for: `for (Type name : iterable)`.
        save = self.pos
        try:
            if self.at("final"):
                self.advance()
            etype = self._parse_type()
            ename = self.expect_ident().text
            if not self.at(":"):
                raise JavaSyntaxError("not an enhanced for", tok.line, tok.col)
            self.advance()
            iterable = self._parse_expr()
            self.expect(")")
            body = self._parse_statement_as_block()
            if self._method is not None:
                self._method.locals[ename] = etype
            element = ir.AssignStmt(
                line=tok.line,
                target=ir.Var(line=tok.line, name=ename),
                rhs=ir.Opaque(line=tok.line, text="<iterate>"),
                declared_type=etype,
            )
            return [
                ir.ExprStmt(line=tok.line, expr=iterable),
                ir.LoopStmt(
                    line=tok.line,
                    cond=ir.Opaque(line=tok.line, text="<has-next>"),
                    body=[element, *body],
                ),
            ]
        except JavaSyntaxError:
            self.pos = save
        # Classic for: `for (init; cond; update)`.
        init: list[ir.Stmt] = []
        if not self.at(";"):
            decl = self._try_parse_local_decl(terminator=";")
            if decl is not None:
                init = decl  # declaration parse consumed the ';'
            else:
                init = [self._expr_to_statement(terminator=";")]
                self.expect(";")
        else:
            self.advance()
        cond = ir.Literal(line=tok.line, text="true") if self.at(";") else self._parse_expr()
        self.expect(";")
        update: list[ir.Stmt] = []
        if not self.at(")"):
            update.append(self._expr_to_statement(terminator=")"))
            while self.at(","):
                self.advance()
                update.append(self._expr_to_statement(terminator=")"))
        self.expect(")")
        body = self._parse_statement_as_block()
        return [*init, ir.LoopStmt(line=tok.line, cond=cond, body=[*body, *update])]

    def _parse_try(self, tok: Token) -> list[ir.Stmt]:
        self.advance()
        resource_stmts: list[ir.Stmt] = []
        resource_names: list[str] = []
        if self.at("("):
            self.advance()
            while not self.at(")"):
                if self.at("final"):
                    self.advance()
                rtype = self._parse_type()
                rname = self.expect_ident().text
                self.expect("=")
                rexpr = self._parse_expr()
                if self._method is not None:
                    self._method.locals[rname] = rtype
                resource_stmts.append(
                    ir.AssignStmt(
                        line=tok.line,
                        target=ir.Var(line=tok.line, name=rname),
                        rhs=rexpr,
                        declared_type=rtype,
                    )
                )
                resource_names.append(rname)
                if self.at(";"):
                    self.advance()
            self.expect(")")
        body = self._parse_block()
        catches: list[ir.CatchClause] = []
        while self.at("catch"):
            catch_tok = self.advance()
            self.expect("(")
            if self.at("final"):
                self.advance()
            ctype = self._parse_type()
            while self.at("|"):  # multi-catch
                self.advance()
                self._parse_type()
            cname = self.expect_ident().text
            self.expect(")")
            cbody = self._parse_block()
            if self._method is not None:
                self._method.locals[cname] = ctype
            catches.append(
                ir.CatchClause(param_name=cname, param_type=ctype, body=cbody, line=catch_tok.line)
            )
        finally_body: list[ir.Stmt] | None = None
        if self.at("finally"):
            self.advance()
            finally_body = self._parse_block()
        if not catches and finally_body is None and not resource_names:
            self.error("try statement lacks catch, finally, and resources")
        if resource_names:
            closes: list[ir.Stmt] = [
                ir.ExprStmt(
                    line=tok.line,
                    expr=ir.Call(
                        line=tok.line, receiver=ir.Var(line=tok.line, name=name), method="close"
                    ),
                )
                for name in reversed(resource_names)
            ]
            inner = ir.TryStmt(line=tok.line, body=body, catches=[], finally_body=closes)
            if catches or finally_body is not None:
                outer = ir.TryStmt(
                    line=tok.line, body=[inner], catches=catches, finally_body=finally_body
                )
                return [*resource_stmts, outer]
            return [*resource_stmts, inner]
        return [ir.TryStmt(line=tok.line, body=body, catches=catches, finally_body=finally_body)]

    def _parse_switch(self, tok: Token) -> list[ir.Stmt]:
        self.advance()
        self.expect("(")
        subject = self._parse_expr()
        self.expect(")")
        self.expect("{")
        arms: list[tuple[ir.Expr | None, list[ir.Stmt]]] = []
        current: list[ir.Stmt] | None = None
        while not self.at("}"):
            if self.at_kind(EOF):
                self.error("unterminated switch body")
            if self.at("case"):
                self.advance()
                label = self._parse_expr()
                self.expect(":")
                current = []
                arms.append((label, current))
            elif self.at("default"):
                self.advance()
                self.expect(":")
                current = []
                arms.append((None, current))
            else:
                if current is None:
                    self.error("statement before first switch label")
                current.extend(self._parse_statement())
        self.expect("}")
        chain: list[ir.Stmt] = []
        default_body: list[ir.Stmt] = []
        conditional: list[tuple[ir.Expr, list[ir.Stmt]]] = []
        for label, body in arms:
            if label is None:
                default_body = body
            else:
                conditional.append((label, body))
        result: list[ir.Stmt] = default_body
        for label, body in reversed(conditional):
            result = [
                ir.IfStmt(
                    line=tok.line,
                    cond=ir.Binary(line=tok.line, op="==", left=subject, right=label),
                    then_body=body,
                    else_body=result,
                )
            ]
        chain.extend(result)
        return chain

    def _try_parse_local_decl(self, terminator: str = ";") -> list[ir.Stmt] | None:
        tok = self.peek()
        if tok.kind != IDENT or tok.text in _NON_DECL_STARTS:
            return None
        save = self.pos
        try:
            if self.at("final"):
                self.advance()
            decl_type = self._parse_type()
            if not self.at_kind(IDENT) or self.peek().text in _NON_DECL_STARTS:
                raise JavaSyntaxError("not a declaration", tok.line, tok.col)
            stmts: list[ir.Stmt] = []
            while True:
                name_tok = self.expect_ident()
                if self._method is not None:
                    self._method.locals[name_tok.text] = decl_type
                if self.at("="):
                    self.advance()
                    rhs = self._parse_expr()
                    target = ir.Var(line=name_tok.line, name=name_tok.text)
                    if isinstance(rhs, ir.Ternary):
                        stmts.append(
                            ir.IfStmt(
                                line=name_tok.line,
                                cond=rhs.cond,
                                then_body=[
                                    ir.AssignStmt(
                                        line=name_tok.line, target=target, rhs=rhs.then,
                                        declared_type=decl_type,
                                    )
                                ],
                                else_body=[
                                    ir.AssignStmt(
                                        line=name_tok.line, target=target, rhs=rhs.other,
                                        declared_type=decl_type,
                                    )
                                ],
                            )
                        )
                    else:
                        stmts.append(
                            ir.AssignStmt(
                                line=name_tok.line, target=target, rhs=rhs,
                                declared_type=decl_type,
                            )
                        )
                if self.at(","):
                    self.advance()
                    continue
                break
            if terminator == ";":
                self.expect(";")
            elif not self.at(terminator):
                raise JavaSyntaxError("unterminated declaration", tok.line, tok.col)
            return stmts
        except JavaSyntaxError:
            self.pos = save
            return None

    def _expr_to_statement(self, terminator: str) -> ir.Stmt:
        line = self.peek().line
        expr = self._parse_expr()
        if self.at("="):
            self.advance()
            rhs = self._parse_expr()
            target = expr if isinstance(expr, (ir.Var, ir.FieldAccess)) else None
            if isinstance(rhs, ir.Ternary) and target is not None:
                return ir.IfStmt(
                    line=line,
                    cond=rhs.cond,
                    then_body=[ir.AssignStmt(line=line, target=target, rhs=rhs.then)],
                    else_body=[ir.AssignStmt(line=line, target=target, rhs=rhs.other)],
                )
            return ir.AssignStmt(line=line, target=target, rhs=rhs)
        compound = ("+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>=")
        if self.peek().text in compound:
            op = self.advance().text
            rhs = self._parse_expr()
            return ir.ExprStmt(line=line, expr=ir.Binary(line=line, op=op, left=expr, right=rhs))
        return ir.ExprStmt(line=line, expr=expr)

    def _parse_expr_statement(self) -> list[ir.Stmt]:
        stmt = self._expr_to_statement(terminator=";")
        self.expect(";")
        return [stmt]

    # -- expressions -----------------------------------------------------------

    def _parse_expr(self) -> ir.Expr:
        return self._parse_ternary()

    def _parse_ternary(self) -> ir.Expr:
        cond = self._parse_or()
        if self.at("?"):
            line = self.advance().line
            then = self._parse_expr()
            self.expect(":")
            other = self._parse_ternary()
            return ir.Ternary(line=line, cond=cond, then=then, other=other)
        return cond

    def _binary_level(self, ops: tuple[str, ...], next_level) -> ir.Expr:
        left = next_level()
        while self.peek().text in ops:
            op_tok = self.advance()
            right = next_level()
            left = ir.Binary(line=op_tok.line, op=op_tok.text, left=left, right=right)
        return left

    def _parse_or(self) -> ir.Expr:
        return self._binary_level(("||",), self._parse_and)

    def _parse_and(self) -> ir.Expr:
        return self._binary_level(("&&",), self._parse_equality)

    def _parse_equality(self) -> ir.Expr:
        return self._binary_level(("==", "!=", "&", "|", "^"), self._parse_relational)

    def _parse_relational(self) -> ir.Expr:
        left = self._parse_additive()
        while self.peek().text in ("<", ">", "<=", ">=", "instanceof"):
            op_tok = self.advance()
            if op_tok.text == "instanceof":
                rtype = self._parse_type()
                left = ir.Binary(
                    line=op_tok.line, op="instanceof", left=left,
                    right=ir.Var(line=op_tok.line, name=rtype),
                )
            else:
                right = self._parse_additive()
                left = ir.Binary(line=op_tok.line, op=op_tok.text, left=left, right=right)
        return left

    def _parse_additive(self) -> ir.Expr:
        return self._binary_level(("+", "-"), self._parse_multiplicative)

    def _parse_multiplicative(self) -> ir.Expr:
        return self._binary_level(("*", "/", "%"), self._parse_unary)

    def _parse_unary(self) -> ir.Expr:
        tok = self.peek()
        if tok.text in ("!", "-", "+", "~", "++", "--"):
            self.advance()
            operand = self._parse_unary()
            return ir.Unary(line=tok.line, op=tok.text, operand=operand)
        if tok.text == "(":
            save = self.pos
            try:
                self.advance()
                cast_type = self._parse_type()
                self.expect(")")
                nxt = self.peek()
                castable = (
                    nxt.kind in (IDENT, NUMBER, STRING, CHARLIT)
                    and nxt.text not in ("instanceof",)
                ) or nxt.text in ("(", "!", "~")
                if not castable or cast_type in ("true", "false", "null"):
                    raise JavaSyntaxError("not a cast", tok.line, tok.col)
                return self._parse_unary()  # casts are transparent to the IR
            except JavaSyntaxError:
                self.pos = save
        return self._parse_postfix()

    def _parse_postfix(self) -> ir.Expr:
        expr = self._parse_primary()
        while True:
            if self.at("."):
                nxt = self.peek(1)
                if nxt.kind != IDENT:
                    break
                self.advance()
                name_tok = self.advance()
                if self.at("("):
                    args = self._parse_args()
                    expr = ir.Call(
                        line=name_tok.line, receiver=expr, method=name_tok.text, args=args
                    )
                else:
                    expr = ir.FieldAccess(line=name_tok.line, owner=expr, name=name_tok.text)
                continue
            if self.at("[") :
                self.advance()
                index = None if self.at("]") else self._parse_expr()
                self.expect("]")
                expr = ir.Opaque(
                    line=self.peek().line, text="<index>",
                    has_call=ir.expr_contains_call(expr) or ir.expr_contains_call(index),
                )
                continue
            if self.peek().text in ("++", "--"):
                op_tok = self.advance()
                expr = ir.Unary(line=op_tok.line, op="post" + op_tok.text, operand=expr)
                continue
            if self.at("::"):
                self.advance()
                if self.at_kind(IDENT) or self.at("new"):
                    self.advance()
                expr = ir.Opaque(line=self.peek().line, text="<method-ref>")
                continue
            break
        return expr

    def _parse_args(self) -> list[ir.Expr]:
        self.expect("(")
        args: list[ir.Expr] = []
        while not self.at(")"):
            args.append(self._parse_expr())
            if self.at(","):
                self.advance()
            elif not self.at(")"):
                self.error("malformed argument list")
        self.expect(")")
        return args

    def _parse_primary(self) -> ir.Expr:
        tok = self.peek()
        if tok.kind in (NUMBER, STRING, CHARLIT):
            self.advance()
            return ir.Literal(line=tok.line, text=tok.text)
        if tok.text in ("true", "false", "null"):
            self.advance()
            return ir.Literal(line=tok.line, text=tok.text)
        if tok.text == "new":
            return self._parse_creator()
        if tok.text == "(":
            save = self.pos
            self.advance()
            try:
                inner = self._parse_expr()
                self.expect(")")
            except JavaSyntaxError:
                self.pos = save
                self.error("malformed parenthesized expression")
            if self.at("->"):
                self.advance()
                self._skip_lambda_body()
                return ir.Opaque(line=tok.line, text="<lambda>")
            return inner
        if tok.kind == IDENT:
            self.advance()
            if self.at("->"):
                self.advance()
                self._skip_lambda_body()
                return ir.Opaque(line=tok.line, text="<lambda>")
            if self.at("("):
                args = self._parse_args()
                return ir.Call(line=tok.line, receiver=None, method=tok.text, args=args)
            return ir.Var(line=tok.line, name=tok.text)
        if tok.text == "{":
            # Array initializer in expression position.
            self._skip_balanced("{", "}")
            return ir.Opaque(line=tok.line, text="<array-init>")
        self.error(f"unexpected token {tok.text or '<eof>'!r} in expression")

    def _skip_lambda_body(self):
        if self.at("{"):
            self._skip_balanced("{", "}")
        else:
            depth = 0
            while not self.at_kind(EOF):
                text = self.peek().text
                if depth == 0 and text in (",", ";", ")"):
                    return
                if text in ("(", "{", "["):
                    depth += 1
                elif text in (")", "}", "]"):
                    depth -= 1
                self.advance()

    def _parse_creator(self) -> ir.Expr:
        new_tok = self.expect("new")
        type_name = self._parse_type()
        if type_name.endswith("[]") or self.at("["):
            # Array creation: consume dimensions and optional initializer.
            has_call = False
            while self.at("["):
                self.advance()
                if not self.at("]"):
                    has_call = has_call or ir.expr_contains_call(self._parse_expr())
                self.expect("]")
            if self.at("{"):
                self._skip_balanced("{", "}")
            return ir.Opaque(line=new_tok.line, text="<new-array>", has_call=has_call)
        args = self._parse_args() if self.at("(") else []
        anon_name = None
        if self.at("{"):
            enclosing = self._class_stack[-1] if self._class_stack else "<toplevel>"
            count = self._anon_counters.get(enclosing, 0) + 1
            self._anon_counters[enclosing] = count
            anon_name = f"{enclosing}${count}"
            anon_decl = ir.ClassDecl(name=anon_name, superclass=type_name, line=new_tok.line)
            self.classes.append(anon_decl)
            self._class_stack.append(anon_name)
            try:
                self._parse_class_body(anon_decl)
            finally:
                self._class_stack.pop()
        return ir.New(line=new_tok.line, type_name=type_name, args=args, anon_class=anon_name)


def parse_unit(text: str, path: str = "<memory>") -> ir.SourceUnit:
    """Parse one Java source file into a SourceUnit."""
    return _Parser(text, path).parse_unit()
