"""The concrete leak detectors built on the dataflow engine.

Seven checkers, one per recurring fault pattern:

* ``move_to_first`` / ``get_count`` -- empty-cursor branches that skip
  ``close()`` (API misunderstanding: only non-empty cursors get closed);
* ``swap_cursor`` -- ``swapCursor()`` returns the old cursor instead of
  closing it, and callers routinely drop that return value;
* ``lost_reference`` -- the only variable holding an unreleased resource is
  overwritten by a second acquisition;
* ``lacking_reference`` -- a resource is acquired as a nested call with no
  variable bound to it, so it can never be released;
* ``lifecycle_pairing`` -- a field resource acquired in a lifecycle callback
  (onCreate, onResume, ...) with no release in the paired teardown callback;
* ``reacquire_counted`` -- re-acquiring a held reference-counted lock, which
  raises the count and makes a single release insufficient.

Reachability (not path-sensitivity) decides whether a release "covers" a
branch, mirroring a deliberately precision-oriented design: if any node
invoking the release API is reachable from a branch, that branch is
considered handled.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import dataflow as df
from .errors import JavaSyntaxError, LeakLintError
from .frontend import ir
from .frontend.cfg import CFG, FALSE, TRUE, build_cfg
from .frontend.parser import parse_unit
from .registry import Consequence, Registry, ResourceSpec

CHECKER_IDS = (
    "move_to_first",
    "get_count",
    "swap_cursor",
    "lost_reference",
    "lacking_reference",
    "lifecycle_pairing",
    "reacquire_counted",
)

CURSOR_CLASS = "android.database.Cursor"

# Receiver types accepted as adapters for high-confidence swapCursor findings.
_ADAPTER_TYPES = ("CursorAdapter", "SimpleCursorAdapter", "ResourceCursorAdapter")

MAX_FILE_BYTES = 2 * 1024 * 1024


@dataclass
class Finding:
    checker_id: str
    resource_class: str
    consequence: Consequence
    file: str
    class_name: str
    method: str
    line: int
    extent: df.LeakExtent
    confidence: str
    message: str
    binding: str | None = None

    def sort_key(self):
        return (self.file, self.line, self.checker_id)

    def to_json(self) -> dict:
        return {
            "checker": self.checker_id,
            "class": self.class_name,
            "file": self.file,
            "method": self.method,
            "line": self.line,
            "resource_class": self.resource_class,
            "consequence": self.consequence.value,
            "extent": self.extent.value,
            "confidence": self.confidence,
            "message": self.message,
        }


@dataclass
class MethodContext:
    """Everything the per-method checkers need about one analyzed method."""

    file: str
    class_decl: ir.ClassDecl
    method: ir.MethodIR
    cfg: CFG
    analysis: df.AnalysisResult
    registry: Registry

    @property
    def scope(self) -> df.MethodScope:
        return self.analysis.scope

    def finding(self, checker_id, spec: ResourceSpec, line, extent, confidence, message,
                binding=None) -> Finding:
        line = max(self.method.line_start, min(line or self.method.line_start,
                                               self.method.line_end or line or 0))
        return Finding(
            checker_id=checker_id,
            resource_class=spec.class_name,
            consequence=spec.consequence,
            file=self.file,
            class_name=self.class_decl.name,
            method=self.method.name,
            line=line,
            extent=extent,
            confidence=confidence,
            message=message,
            binding=binding,
        )


# -- condition normalization ------------------------------------------------------


def _single_assignment_rhs(method: ir.MethodIR, name: str) -> ir.Expr | None:
    """The unique rhs assigned to a local, or None when 0 or >1 assignments."""
    rhs = None
    count = 0
    for stmt in method.flatten():
        if isinstance(stmt, ir.AssignStmt) and isinstance(stmt.target, ir.Var):
            if stmt.target.name == name:
                count += 1
                rhs = stmt.rhs
    return rhs if count == 1 else None


def _resolve_condition_call(ctx: MethodContext, cond, method_name: str):
    """Find `<binding>.<method_name>()` inside a boolean condition.

    Returns (binding, negated) where `negated` tells whether the call result
    is logically inverted; handles `!`, `== true/false`, `!= true/false`,
    and single-assignment boolean forwarding.  None when the condition does
    not test that call.
    """

    def resolve(expr, negated):
        if isinstance(expr, ir.Unary) and expr.op == "!":
            return resolve(expr.operand, not negated)
        if isinstance(expr, ir.Binary) and expr.op in ("==", "!="):
            invert = expr.op == "!="
            for lit, other in ((expr.left, expr.right), (expr.right, expr.left)):
                if isinstance(lit, ir.Literal) and lit.text in ("true", "false"):
                    flip = (lit.text == "false") != invert
                    return resolve(other, negated != flip)
            return None
        if isinstance(expr, ir.Call) and expr.method == method_name:
            binding = ctx.scope.binding_of(expr.receiver)
            if binding is None:
                return None
            return (binding, negated)
        if isinstance(expr, ir.Var):
            forwarded = _single_assignment_rhs(ctx.method, expr.name)
            if isinstance(forwarded, ir.Call) and forwarded.method == method_name:
                binding = ctx.scope.binding_of(forwarded.receiver)
                if binding is not None:
                    return (binding, negated)
            return None
        return None

    return resolve(cond, False)


def _resolve_count_condition(ctx: MethodContext, cond):
    """Recognize emptiness checks on getCount(): returns (binding, empty_branch).

    ``empty_branch`` is the edge label (TRUE/FALSE) leading to the
    empty-cursor branch.
    """

    def count_binding(expr):
        if isinstance(expr, ir.Call) and expr.method == "getCount":
            return ctx.scope.binding_of(expr.receiver)
        if isinstance(expr, ir.Var):
            forwarded = _single_assignment_rhs(ctx.method, expr.name)
            if isinstance(forwarded, ir.Call) and forwarded.method == "getCount":
                return ctx.scope.binding_of(forwarded.receiver)
        return None

    def resolve(expr, flipped):
        if isinstance(expr, ir.Unary) and expr.op == "!":
            return resolve(expr.operand, not flipped)
        if not isinstance(expr, ir.Binary):
            return None
        op = expr.op
        left, right = expr.left, expr.right
        binding = count_binding(left)
        lit = right
        if binding is None:
            binding = count_binding(right)
            lit = left
            # Mirror the comparison so getCount() is on the left.
            op = {"<": ">", ">": "<", "<=": ">=", ">=": "<="}.get(op, op)
        if binding is None or not isinstance(lit, ir.Literal):
            return None
        form = (op, lit.text)
        nonempty_true = {(">", "0"), (">=", "1"), ("!=", "0")}
        empty_true = {("==", "0"), ("<", "1"), ("<=", "0")}
        if form in nonempty_true:
            empty_branch = FALSE
        elif form in empty_true:
            empty_branch = TRUE
        else:
            return None
        if flipped:
            empty_branch = TRUE if empty_branch == FALSE else FALSE
        return (binding, empty_branch)

    return resolve(cond, False)


# -- shared helpers ------------------------------------------------------------------


def _release_nodes(ctx: MethodContext, binding: df.Binding) -> set[int]:
    return {
        node.node_id
        for node in ctx.cfg.statement_nodes()
        if df.stmt_releases(node.stmt, binding, ctx.scope, ctx.registry)
    }


def _release_reachable_from(ctx: MethodContext, starts: list[int], binding: df.Binding) -> bool:
    releases = _release_nodes(ctx, binding)
    if not releases:
        return False
    seen: set[int] = set()
    stack = list(starts)
    while stack:
        nid = stack.pop()
        if nid in seen:
            continue
        seen.add(nid)
        if nid in releases:
            return True
        stack.extend(ctx.cfg.successors(nid))
    return False


def _branch_targets(ctx: MethodContext, if_node: int, label: str) -> list[int]:
    return [e.dst for e in ctx.cfg.out_edges(if_node) if e.label == label]


def _release_coverage_extent(ctx: MethodContext, binding: df.Binding) -> df.LeakExtent:
    """Structural extent: which paths pass a release node for this binding."""
    releases = _release_nodes(ctx, binding)
    releasing = leaking = leaking_exceptional = 0
    try:
        for edge_path in df.iter_edge_paths(ctx.cfg):
            nodes = {e.src for e in edge_path}
            if nodes & releases:
                releasing += 1
            else:
                leaking += 1
                if any(e.label == "exception" for e in edge_path):
                    leaking_exceptional += 1
    except df.PathExplosionError:
        return df.LeakExtent.SOME_NORMAL_PATHS if releases else df.LeakExtent.COMPLETE
    if releasing == 0:
        return df.LeakExtent.COMPLETE
    if leaking > 0 and leaking == leaking_exceptional:
        return df.LeakExtent.EXCEPTIONAL_ONLY
    return df.LeakExtent.SOME_NORMAL_PATHS


def _binding_confidence(ctx: MethodContext, binding: df.Binding, spec: ResourceSpec) -> str:
    declared = ctx.scope.declared_type(binding)
    if declared is None:
        return "low"
    from .registry import _declared_type_matches

    return "high" if _declared_type_matches(declared, spec.class_name) else "low"


def _cursor_spec(reg: Registry) -> ResourceSpec:
    return reg.specs[CURSOR_CLASS]


# -- the seven checkers ----------------------------------------------------------------


def check_move_to_first(ctx: MethodContext) -> list[Finding]:
    findings = []
    spec = _cursor_spec(ctx.registry)
    for node in ctx.cfg.statement_nodes():
        if node.kind != "if":
            continue
        resolved = _resolve_condition_call(ctx, node.stmt.cond, "moveToFirst")
        if resolved is None:
            continue
        binding, negated = resolved
        empty_label = TRUE if negated else FALSE
        starts = _branch_targets(ctx, node.node_id, empty_label)
        if _release_reachable_from(ctx, starts, binding):
            continue
        extent = _release_coverage_extent(ctx, binding)
        findings.append(
            ctx.finding(
                "move_to_first", spec, node.line, extent,
                _binding_confidence(ctx, binding, spec),
                f"cursor '{binding}' is not closed when moveToFirst() returns false "
                "(empty cursors must be closed too); close it on the empty branch "
                "or in a finally block",
                binding=str(binding),
            )
        )
    return findings


def check_get_count(ctx: MethodContext) -> list[Finding]:
    findings = []
    spec = _cursor_spec(ctx.registry)
    for node in ctx.cfg.statement_nodes():
        if node.kind != "if":
            continue
        resolved = _resolve_count_condition(ctx, node.stmt.cond)
        if resolved is None:
            continue
        binding, empty_label = resolved
        starts = _branch_targets(ctx, node.node_id, empty_label)
        if _release_reachable_from(ctx, starts, binding):
            continue
        extent = _release_coverage_extent(ctx, binding)
        findings.append(
            ctx.finding(
                "get_count", spec, node.line, extent,
                _binding_confidence(ctx, binding, spec),
                f"cursor '{binding}' is not closed when getCount() reports an empty "
                "result; close it on the empty branch or in a finally block",
                binding=str(binding),
            )
        )
    return findings


def check_swap_cursor(ctx: MethodContext) -> list[Finding]:
    findings = []
    spec = _cursor_spec(ctx.registry)

    def adapter_confidence(call: ir.Call) -> str:
        receiver = ctx.scope.binding_of(call.receiver)
        declared = ctx.scope.declared_type(receiver) if receiver else None
        if declared and declared.endswith(_ADAPTER_TYPES):
            return "high"
        return "low"

    for node in ctx.cfg.statement_nodes():
        stmt = node.stmt
        if isinstance(stmt, ir.ExprStmt) and isinstance(stmt.expr, ir.Call) \
                and stmt.expr.method == "swapCursor":
            findings.append(
                ctx.finding(
                    "swap_cursor", spec, node.line, df.LeakExtent.COMPLETE,
                    adapter_confidence(stmt.expr),
                    "swapCursor() returns the previous cursor instead of closing it; "
                    "close the returned cursor or use changeCursor()",
                )
            )
        elif isinstance(stmt, ir.AssignStmt) and isinstance(stmt.rhs, ir.Call) \
                and stmt.rhs.method == "swapCursor" and stmt.target is not None:
            binding = ctx.scope.binding_of(stmt.target)
            if binding is None:
                continue
            starts = [e.dst for e in ctx.cfg.out_edges(node.node_id)]
            if _release_reachable_from(ctx, starts, binding):
                continue
            findings.append(
                ctx.finding(
                    "swap_cursor", spec, node.line, df.LeakExtent.COMPLETE,
                    adapter_confidence(stmt.rhs),
                    f"previous cursor '{binding}' returned by swapCursor() is never "
                    "closed; close it or use changeCursor()",
                    binding=str(binding),
                )
            )
    return findings


def check_lost_reference(ctx: MethodContext) -> list[Finding]:
    findings = []
    for event in ctx.analysis.events:
        if event.kind is not df.EventKind.LOST_REFERENCE:
            continue
        extent = df.classify_extent(
            ctx.cfg, event.binding, ctx.registry,
            class_fields=ctx.class_decl.fields, stop_node=event.node_id,
        )
        findings.append(
            ctx.finding(
                "lost_reference", event.spec, event.line, extent, event.confidence,
                f"reassigning '{event.binding}' drops the only reference to an "
                f"unreleased {event.spec.class_name}; release it before requerying",
                binding=str(event.binding),
            )
        )
    return findings


def check_lacking_reference(ctx: MethodContext) -> list[Finding]:
    findings = []
    for event in ctx.analysis.events:
        if event.kind is not df.EventKind.UNBOUND_ACQUIRE:
            continue
        findings.append(
            ctx.finding(
                "lacking_reference", event.spec, event.line, df.LeakExtent.COMPLETE,
                event.confidence,
                f"{event.spec.class_name} is acquired as a nested call with no "
                "variable bound to it, so it can never be released; bind it and "
                "release it in a finally block",
            )
        )
    return findings


def check_reacquire_counted(ctx: MethodContext) -> list[Finding]:
    findings = []
    for event in ctx.analysis.events:
        if event.kind is not df.EventKind.REACQUIRE_WHILE_HELD or not event.spec.counted:
            continue
        extent = df.classify_extent(
            ctx.cfg, event.binding, ctx.registry, class_fields=ctx.class_decl.fields
        )
        findings.append(
            ctx.finding(
                "reacquire_counted", event.spec, event.line, extent, event.confidence,
                f"'{event.binding}' is reference counted and still held here; "
                "acquiring again raises the count, so release the held lock "
                "before acquiring a new one",
                binding=str(event.binding),
            )
        )
    return findings


def check_lifecycle_pairing(
    file: str, class_decl: ir.ClassDecl, registry: Registry,
    contexts: dict[str, MethodContext],
) -> list[Finding]:
    """Field resources acquired in a lifecycle callback but not released in
    the paired teardown callback."""
    findings = []
    methods_by_name = {m.name: m for m in class_decl.methods}
    for acq_name, rel_name in registry.lifecycle_pairs:
        acq_ctx = contexts.get(acq_name)
        if acq_ctx is None:
            continue
        exit_env = acq_ctx.analysis.in_envs.get(acq_ctx.cfg.normal_exit, {})
        for binding, bs in sorted(exit_env.items(), key=lambda kv: str(kv[0])):
            if not binding.is_field or bs.spec is None or bs.state.kind != "acquired":
                continue
            releaser = methods_by_name.get(rel_name)
            rel_ctx = contexts.get(rel_name)
            released = False
            if releaser is not None and rel_ctx is not None:
                released = any(
                    df.stmt_releases(node.stmt, binding, rel_ctx.scope, registry)
                    for node in rel_ctx.cfg.statement_nodes()
                )
            if released:
                continue
            line = _field_acquire_line(acq_ctx, binding)
            where = (
                f"'{rel_name}' does not release it"
                if releaser is not None
                else f"there is no '{rel_name}' callback"
            )
            findings.append(
                acq_ctx.finding(
                    "lifecycle_pairing", bs.spec, line, df.LeakExtent.COMPLETE,
                    bs.confidence,
                    f"field '{binding.name}' acquires a {bs.spec.class_name} in "
                    f"'{acq_name}' but {where}; release it in '{rel_name}'",
                    binding=str(binding),
                )
            )
    return findings


def _field_acquire_line(ctx: MethodContext, binding: df.Binding) -> int:
    for stmt in ctx.method.flatten():
        if isinstance(stmt, ir.AssignStmt):
            target = ctx.scope.binding_of(stmt.target)
            if target == binding:
                return stmt.line
        if isinstance(stmt, ir.ExprStmt) and isinstance(stmt.expr, ir.Call):
            if ctx.scope.binding_of(stmt.expr.receiver) == binding:
                return stmt.line
    return ctx.method.line_start


_METHOD_CHECKERS = {
    "move_to_first": check_move_to_first,
    "get_count": check_get_count,
    "swap_cursor": check_swap_cursor,
    "lost_reference": check_lost_reference,
    "lacking_reference": check_lacking_reference,
    "reacquire_counted": check_reacquire_counted,
}


# -- drivers -------------------------------------------------------------------------


@dataclass
class Diagnostic:
    file: str
    message: str

    def to_json(self) -> dict:
        return {"file": self.file, "message": self.message}


def scan_source(
    text: str, file: str, registry: Registry, enabled: set[str] | None = None
) -> tuple[list[Finding], list[Diagnostic]]:
    """Run the enabled checkers over one source text."""
    enabled = set(CHECKER_IDS) if enabled is None else enabled
    findings: list[Finding] = []
    diagnostics: list[Diagnostic] = []
    try:
        unit = parse_unit(text, file)
    except JavaSyntaxError as exc:
        return [], [Diagnostic(file, f"syntax error: {exc}")]
    for class_decl in unit.classes:
        contexts: dict[str, MethodContext] = {}
        for method in class_decl.methods:
            try:
                cfg = build_cfg(method)
                analysis = df.analyze(cfg, registry, class_fields=class_decl.fields)
            except LeakLintError as exc:
                diagnostics.append(Diagnostic(file, f"{method.method_id}: {exc}"))
                continue
            contexts[method.name] = MethodContext(
                file=file, class_decl=class_decl, method=method,
                cfg=cfg, analysis=analysis, registry=registry,
            )
        for name in sorted(contexts):
            ctx = contexts[name]
            for checker_id, checker in _METHOD_CHECKERS.items():
                if checker_id in enabled:
                    findings.extend(checker(ctx))
        if "lifecycle_pairing" in enabled:
            findings.extend(check_lifecycle_pairing(file, class_decl, registry, contexts))
    return findings, diagnostics


def _dedupe_sort(findings: list[Finding]) -> list[Finding]:
    seen = set()
    unique = []
    for finding in sorted(findings, key=lambda f: (f.sort_key(), f.binding or "")):
        key = (finding.checker_id, finding.file, finding.line, finding.binding)
        if key not in seen:
            seen.add(key)
            unique.append(finding)
    return unique


def discover_files(roots: list[str]) -> tuple[list[str], list[Diagnostic]]:
    """All .java files under the given roots; oversized files are skipped."""
    files: list[str] = []
    diagnostics: list[Diagnostic] = []
    for root in roots:
        if os.path.isfile(root):
            candidates = [root]
        else:
            candidates = []
            for dirpath, dirnames, filenames in os.walk(root):
                dirnames.sort()
                for name in sorted(filenames):
                    if name.endswith(".java"):
                        candidates.append(os.path.join(dirpath, name))
        for path in candidates:
            try:
                if os.path.getsize(path) > MAX_FILE_BYTES:
                    diagnostics.append(Diagnostic(path, "skipped: file larger than 2 MiB"))
                    continue
            except OSError as exc:
                diagnostics.append(Diagnostic(path, f"unreadable: {exc}"))
                continue
            files.append(path)
    return sorted(set(files)), diagnostics


def scan_file(
    path: str, registry: Registry, enabled: set[str] | None = None
) -> tuple[list[Finding], list[Diagnostic]]:
    try:
        with open(path, "r", encoding="utf-8", errors="replace") as fh:
            text = fh.read()
    except OSError as exc:
        return [], [Diagnostic(path, f"unreadable: {exc}")]
    return scan_source(text, path, registry, enabled)


def run_all(
    paths: list[str],
    registry: Registry,
    enabled: set[str] | None = None,
    jobs: int = 1,
) -> tuple[list[Finding], list[Diagnostic]]:
    """Scan every .java file under the given roots.

    Files are independent, so they may be scanned by a worker pool; results
    are merged in path order, so the output is identical for any job count.
    """
    files, diagnostics = discover_files(paths)
    results: dict[str, tuple[list[Finding], list[Diagnostic]]] = {}
    if jobs > 1 and len(files) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for path, result in zip(files, pool.map(
                lambda p: scan_file(p, registry, enabled), files
            )):
                results[path] = result
    else:
        for path in files:
            results[path] = scan_file(path, registry, enabled)
    findings: list[Finding] = []
    for path in files:
        file_findings, file_diagnostics = results[path]
        findings.extend(file_findings)
        diagnostics.extend(file_diagnostics)
    return _dedupe_sort(findings), diagnostics
