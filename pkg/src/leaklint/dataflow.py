"""Forward dataflow tracking acquire/release states of resource bindings.

The lattice per binding:

    Bottom  <  Acquired(1) < ... < Acquired(cap)  <  MaybeReleased < Escaped
    Bottom  <  Released                           <  MaybeReleased

``join(Acquired, Released) = MaybeReleased``; ``Escaped`` absorbs
everything.  Acquired counts saturate at a small cap so the lattice stays
finite; only counted resources (wake locks, semaphores) ever exceed 1.

Transfer semantics are edge-kind aware: when a statement throws, its
acquire effects have not happened (the pre-state flows along the exception
edge) but releases and argument escapes are kept, so a failing ``close()``
does not count as a leak of its own receiver.

Besides the fixpoint engine this module provides the brute-force path
enumerator (used as an independent test oracle), leak extraction at the
exits, and the leak-extent classifier.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field, replace

from .errors import AmbiguousMatchError, AnalysisInternalError, PathExplosionError
from .frontend import ir
from .frontend.cfg import CFG, EXCEPTION, Edge
from .registry import CONSTRUCTOR, WILDCARD, ApiSignature, Registry, ResourceSpec

COUNT_CAP = 8
MAX_PATHS = 100_000


# -- lattice -------------------------------------------------------------------


@dataclass(frozen=True)
class AbstractState:
    kind: str  # bottom | acquired | released | maybe | escaped
    count: int = 0

    def __repr__(self):
        return f"Acquired({self.count})" if self.kind == "acquired" else self.kind.capitalize()


BOTTOM = AbstractState("bottom")
RELEASED = AbstractState("released")
MAYBE_RELEASED = AbstractState("maybe")
ESCAPED = AbstractState("escaped")


def acquired(count: int = 1) -> AbstractState:
    return AbstractState("acquired", max(1, min(count, COUNT_CAP)))


ALL_STATES = (BOTTOM, RELEASED, MAYBE_RELEASED, ESCAPED) + tuple(
    acquired(n) for n in range(1, COUNT_CAP + 1)
)


def join(a: AbstractState, b: AbstractState) -> AbstractState:
    if a == b:
        return a
    if a == BOTTOM:
        return b
    if b == BOTTOM:
        return a
    if a == ESCAPED or b == ESCAPED:
        return ESCAPED
    if a.kind == "acquired" and b.kind == "acquired":
        return acquired(max(a.count, b.count))
    return MAYBE_RELEASED


def leq(a: AbstractState, b: AbstractState) -> bool:
    return join(a, b) == b


def state_reportable(state: AbstractState) -> bool:
    """Reported as a leak when seen at an exit."""
    return state.kind == "acquired" or state == MAYBE_RELEASED


# -- bindings and environments ---------------------------------------------------


@dataclass(frozen=True)
class Binding:
    name: str
    is_field: bool = False

    def __str__(self):
        return f"this.{self.name}" if self.is_field else self.name


@dataclass(frozen=True)
class BindingState:
    state: AbstractState
    spec: ResourceSpec | None = None
    confidence: str = "high"


_BOTTOM_BS = BindingState(BOTTOM)


def join_binding_state(a: BindingState, b: BindingState) -> BindingState:
    state = join(a.state, b.state)
    spec = a.spec if a.spec is not None else b.spec
    confidence = "low" if "low" in (a.confidence, b.confidence) else "high"
    return BindingState(state, spec, confidence)


def join_env(a: dict, b: dict) -> dict:
    out = dict(a)
    for binding, bs in b.items():
        out[binding] = join_binding_state(out.get(binding, _BOTTOM_BS), bs)
    return out


# -- events ----------------------------------------------------------------------


class EventKind(enum.Enum):
    LOST_REFERENCE = "LostReference"
    REACQUIRE_WHILE_HELD = "ReacquireWhileHeld"
    UNBOUND_ACQUIRE = "UnboundAcquire"


@dataclass(frozen=True)
class FlowEvent:
    kind: EventKind
    node_id: int
    line: int
    binding: Binding | None
    spec: ResourceSpec
    confidence: str = "high"


# -- name/type resolution ----------------------------------------------------------


class MethodScope:
    """Resolves identifiers of one method to bindings and declared types."""

    def __init__(self, method: ir.MethodIR, class_fields: dict[str, str] | None = None):
        self.method = method
        self.fields = dict(class_fields or {})

    def binding_of(self, expr) -> Binding | None:
        if isinstance(expr, ir.Var):
            name = expr.name
            if name in ("this", "super"):
                return None
            if self.method.declared_type_of(name) is not None:
                return Binding(name, is_field=False)
            if name in self.fields:
                return Binding(name, is_field=True)
            return None
        if isinstance(expr, ir.FieldAccess):
            owner = expr.owner
            if isinstance(owner, ir.Var) and owner.name == "this" and expr.name in self.fields:
                return Binding(expr.name, is_field=True)
            return None
        return None

    def declared_type(self, binding: Binding) -> str | None:
        if binding.is_field:
            return self.fields.get(binding.name)
        return self.method.declared_type_of(binding.name)

    def receiver_descriptor(self, expr) -> str:
        """Declared type of a call receiver, a type name, or the wildcard."""
        if expr is None:
            return WILDCARD
        binding = self.binding_of(expr)
        if binding is not None:
            return self.declared_type(binding) or WILDCARD
        # A dotted chain of plain identifiers that resolves to no binding is
        # read as a (possibly qualified) type name, e.g. Camera.open().
        parts: list[str] = []
        cur = expr
        while isinstance(cur, ir.FieldAccess):
            parts.append(cur.name)
            cur = cur.owner
        if isinstance(cur, ir.Var) and self.binding_of(cur) is None and cur.name != "this":
            parts.append(cur.name)
            return ".".join(reversed(parts))
        return WILDCARD


def call_site(scope: MethodScope, expr) -> ApiSignature:
    if isinstance(expr, ir.New):
        return ApiSignature(expr.type_name or WILDCARD, CONSTRUCTOR, len(expr.args))
    assert isinstance(expr, ir.Call)
    return ApiSignature(scope.receiver_descriptor(expr.receiver), expr.method, len(expr.args))


def _binding_matches_spec(scope: MethodScope, binding: Binding, spec: ResourceSpec, env) -> bool:
    bs = env.get(binding)
    if bs is not None and bs.spec is not None:
        return bs.spec.class_name == spec.class_name
    declared = scope.declared_type(binding)
    if declared is None:
        return False
    from .registry import _declared_type_matches

    return _declared_type_matches(declared, spec.class_name)


# -- transfer function ----------------------------------------------------------------


class _Transfer:
    """Applies one statement's effects to a copy of the environment."""

    def __init__(self, scope: MethodScope, registry: Registry, node_id: int,
                 include_acquires: bool, events: list | None):
        self.scope = scope
        self.registry = registry
        self.node_id = node_id
        self.include_acquires = include_acquires
        self.events = events
        self.env: dict = {}
        self.line = 0

    # env helpers

    def get(self, binding: Binding) -> BindingState:
        return self.env.get(binding, _BOTTOM_BS)

    def set(self, binding: Binding, bs: BindingState):
        self.env[binding] = bs

    def emit(self, kind: EventKind, binding, spec, confidence="high"):
        if self.events is not None:
            self.events.append(
                FlowEvent(kind, self.node_id, self.line, binding, spec, confidence)
            )

    # effects

    def escape(self, binding: Binding):
        bs = self.get(binding)
        if bs.state != BOTTOM:
            self.set(binding, replace(bs, state=ESCAPED))

    def release(self, binding: Binding, spec: ResourceSpec):
        bs = self.get(binding)
        state = bs.state
        if state.kind == "acquired":
            new = RELEASED if state.count <= 1 else acquired(state.count - 1)
        elif state == MAYBE_RELEASED:
            new = RELEASED
        else:
            return
        self.set(binding, BindingState(new, bs.spec or spec, bs.confidence))

    def acquire_on(self, binding: Binding, spec: ResourceSpec, confidence: str):
        """Receiver- or argument-style acquire: the binding itself takes the resource."""
        if not self.include_acquires:
            return
        bs = self.get(binding)
        if spec.counted and bs.state.kind == "acquired":
            self.emit(EventKind.REACQUIRE_WHILE_HELD, binding, spec, confidence)
            self.set(binding, BindingState(acquired(bs.state.count + 1), spec, confidence))
        else:
            self.set(binding, BindingState(acquired(1), spec, confidence))

    def bind_fresh(self, binding: Binding, spec: ResourceSpec, confidence: str):
        """Assignment-style acquire: binding now holds a freshly acquired resource."""
        if not self.include_acquires:
            return
        old = self.get(binding)
        if old.state.kind == "acquired" and old.spec is not None:
            if old.spec.counted:
                self.emit(EventKind.REACQUIRE_WHILE_HELD, binding, old.spec, old.confidence)
                self.set(binding, BindingState(acquired(old.state.count + 1), spec, confidence))
                return
            self.emit(EventKind.LOST_REFERENCE, binding, old.spec, old.confidence)
        self.set(binding, BindingState(acquired(1), spec, confidence))

    # expression walking

    def handle_expr(self, expr, consumed: bool) -> tuple[ResourceSpec, str] | None:
        """Process side effects; returns (spec, confidence) for a consumed producer."""
        if expr is None or isinstance(expr, (ir.Literal, ir.Opaque)):
            return None
        if isinstance(expr, ir.Var):
            return None
        if isinstance(expr, ir.FieldAccess):
            self.handle_expr(expr.owner, False)
            return None
        if isinstance(expr, (ir.Unary, ir.Binary, ir.Ternary)):
            children = []
            if isinstance(expr, ir.Unary):
                children = [expr.operand]
            elif isinstance(expr, ir.Binary):
                children = [expr.left, expr.right]
            else:
                children = [expr.cond, expr.then, expr.other]
            for child in children:
                self.handle_expr(child, False)
            return None
        if isinstance(expr, ir.Call):
            return self._handle_call(expr, consumed)
        if isinstance(expr, ir.New):
            return self._handle_new(expr, consumed)
        return None

    def _match_acquire(self, site: ApiSignature):
        try:
            return self.registry.acquire_match(site)
        except AmbiguousMatchError:
            return None

    def _match_release(self, site: ApiSignature):
        try:
            return self.registry.release_match(site)
        except AmbiguousMatchError:
            return None

    def _handle_call(self, call: ir.Call, consumed: bool):
        self.handle_expr(call.receiver, False)
        receiver_binding = self.scope.binding_of(call.receiver)
        site = call_site(self.scope, call)
        arg_bindings = [self.scope.binding_of(a) for a in call.args]

        released_args: set[int] = set()
        acquired_args: set[int] = set()
        produced: tuple[ResourceSpec, str] | None = None

        # Release side: the receiver's own spec wins, then the global table.
        release_done = False
        if receiver_binding is not None:
            bs = self.get(receiver_binding)
            if bs.spec is not None and self._spec_release_names(bs.spec, call.method, len(call.args)):
                self.release(receiver_binding, bs.spec)
                release_done = True
        if not release_done:
            rmatch = self._match_release(site)
            if rmatch is not None:
                spec = rmatch.spec
                if receiver_binding is not None and _binding_matches_spec(
                    self.scope, receiver_binding, spec, self.env
                ):
                    self.release(receiver_binding, spec)
                    release_done = True
                else:
                    for i, ab in enumerate(arg_bindings):
                        if ab is not None and _binding_matches_spec(self.scope, ab, spec, self.env):
                            self.release(ab, spec)
                            released_args.add(i)
                            release_done = True
                            break

        if not release_done:
            amatch = self._match_acquire(site)
            if amatch is not None:
                spec = amatch.spec
                confidence = "low" if amatch.wildcard else "high"
                if receiver_binding is not None and _binding_matches_spec(
                    self.scope, receiver_binding, spec, self.env
                ):
                    self.acquire_on(receiver_binding, spec, confidence)
                else:
                    for i, ab in enumerate(arg_bindings):
                        if ab is not None and _binding_matches_spec(self.scope, ab, spec, self.env):
                            if self.include_acquires:
                                self.acquire_on(ab, spec, confidence)
                            acquired_args.add(i)
                            break
                    else:
                        if consumed:
                            produced = (spec, confidence)
                        elif self.include_acquires:
                            self.emit(EventKind.UNBOUND_ACQUIRE, None, spec, confidence)

        # Remaining binding arguments escape into the callee.
        for i, (arg, ab) in enumerate(zip(call.args, arg_bindings)):
            if i in released_args or i in acquired_args:
                continue
            if ab is not None:
                self.escape(ab)
            else:
                self.handle_expr(arg, False)
        return produced

    def _spec_release_names(self, spec: ResourceSpec, method: str, arity: int) -> bool:
        for sig in spec.release:
            if sig.method == method and (sig.arity is None or sig.arity == arity):
                return True
        return False

    def _handle_new(self, new: ir.New, consumed: bool):
        site = call_site(self.scope, new)
        amatch = self._match_acquire(site)
        spec = amatch.spec if amatch else None
        confidence = "low" if (amatch and amatch.wildcard) else "high"
        wraps = bool(spec and spec.closes_wrapped and consumed)
        for arg in new.args:
            ab = self.scope.binding_of(arg)
            if ab is not None:
                self.escape(ab)
            else:
                self.handle_expr(arg, wraps)
        if spec is None:
            return None
        if consumed:
            return (spec, confidence)
        if self.include_acquires:
            self.emit(EventKind.UNBOUND_ACQUIRE, None, spec, confidence)
        return None

    # statements

    def apply(self, stmt, env: dict) -> dict:
        self.env = dict(env)
        self.line = getattr(stmt, "line", 0)
        if isinstance(stmt, ir.AssignStmt):
            self._apply_assign(stmt)
        elif isinstance(stmt, ir.ExprStmt):
            self.handle_expr(stmt.expr, False)
        elif isinstance(stmt, (ir.ReturnStmt, ir.ThrowStmt)):
            expr = stmt.expr
            binding = self.scope.binding_of(expr)
            if binding is not None:
                self.escape(binding)
            else:
                # A resource produced here is handed to the caller: treat the
                # acquisition as consumed rather than unbound.
                self.handle_expr(expr, isinstance(expr, (ir.Call, ir.New)))
        elif isinstance(stmt, (ir.IfStmt, ir.LoopStmt)):
            self.handle_expr(stmt.cond, False)
        # OtherStmt and markers: no tracked effects.
        return self.env

    def _apply_assign(self, stmt: ir.AssignStmt):
        target = self.scope.binding_of(stmt.target)
        rhs = stmt.rhs
        source = self.scope.binding_of(rhs)
        if source is not None:
            # Alias transfer: the obligation moves to the target binding.
            src_bs = self.get(source)
            if target is not None:
                if src_bs.state == BOTTOM:
                    self.set(target, _BOTTOM_BS)
                else:
                    old = self.get(target)
                    if (
                        self.include_acquires
                        and old.state.kind == "acquired"
                        and old.spec is not None
                        and not old.spec.counted
                    ):
                        self.emit(EventKind.LOST_REFERENCE, target, old.spec, old.confidence)
                    self.set(target, src_bs)
                    self.escape(source)
            else:
                self.escape(source)
            return
        produced = self.handle_expr(rhs, isinstance(rhs, (ir.Call, ir.New)))
        if target is None:
            return
        if produced is not None:
            self.bind_fresh(target, produced[0], produced[1])
        elif self.include_acquires:
            old = self.get(target)
            if old.state != BOTTOM:
                # Overwritten with a non-resource value; tracking stops.
                self.set(target, _BOTTOM_BS)


# -- fixpoint engine --------------------------------------------------------------


@dataclass
class AnalysisResult:
    cfg: CFG
    scope: MethodScope
    in_envs: dict[int, dict]
    out_envs: dict[int, dict]
    events: list[FlowEvent] = field(default_factory=list)


def _node_transfer(scope, registry, node, env, include_acquires, events=None) -> dict:
    if node.stmt is None or isinstance(node.stmt, ir.Marker):
        return dict(env)
    tr = _Transfer(scope, registry, node.node_id, include_acquires, events)
    return tr.apply(node.stmt, env)


def analyze(cfg: CFG, registry: Registry, class_fields: dict[str, str] | None = None) -> AnalysisResult:
    """Least-fixpoint dataflow over the CFG; returns envs and flow events."""
    scope = MethodScope(cfg.method, class_fields)
    in_envs: dict[int, dict] = {cfg.entry: {}}
    out_cache: dict[int, tuple[dict, dict]] = {}

    worklist: deque[int] = deque([cfg.entry])
    queued = {cfg.entry}
    iterations = 0
    limit = 10_000 * max(1, len(cfg.nodes))
    while worklist:
        iterations += 1
        if iterations > limit:
            raise AnalysisInternalError(
                f"worklist exceeded {limit} iterations for {cfg.method.method_id}"
            )
        nid = worklist.popleft()
        queued.discard(nid)
        node = cfg.nodes[nid]
        env_in = in_envs.get(nid, {})
        out_normal = _node_transfer(scope, registry, node, env_in, include_acquires=True)
        out_exc = _node_transfer(scope, registry, node, env_in, include_acquires=False)
        out_cache[nid] = (out_normal, out_exc)
        for edge in cfg.out_edges(nid):
            incoming = out_exc if edge.label == EXCEPTION else out_normal
            merged = join_env(in_envs.get(edge.dst, {}), incoming)
            if merged != in_envs.get(edge.dst):
                in_envs[edge.dst] = merged
                if edge.dst not in queued:
                    worklist.append(edge.dst)
                    queued.add(edge.dst)

    # Event collection: one deterministic sweep over the fixpoint states.
    events: list[FlowEvent] = []
    seen: set[tuple] = set()
    for nid in sorted(cfg.nodes):
        node = cfg.nodes[nid]
        if node.stmt is None or isinstance(node.stmt, ir.Marker):
            continue
        collector: list[FlowEvent] = []
        _node_transfer(scope, registry, node, in_envs.get(nid, {}), True, collector)
        for event in collector:
            key = (event.kind, event.node_id, event.binding)
            if key not in seen:
                seen.add(key)
                events.append(event)

    out_envs = {nid: out_cache.get(nid, (in_envs.get(nid, {}),))[0] for nid in cfg.nodes}
    return AnalysisResult(cfg=cfg, scope=scope, in_envs=in_envs, out_envs=out_envs, events=events)


# -- leak extraction -----------------------------------------------------------------


@dataclass(frozen=True)
class LeakCandidate:
    binding: Binding
    spec: ResourceSpec
    confidence: str
    at_normal_exit: bool
    at_exceptional_exit: bool


def leaks_at_exit(result: AnalysisResult) -> list[LeakCandidate]:
    """Bindings still holding their resource at either exit (escapes excluded)."""
    cfg = result.cfg
    found: dict[Binding, dict] = {}
    for exit_id, flag in ((cfg.normal_exit, "normal"), (cfg.exceptional_exit, "exceptional")):
        env = result.in_envs.get(exit_id, {})
        for binding, bs in env.items():
            if bs.spec is None or not state_reportable(bs.state):
                continue
            entry = found.setdefault(
                binding,
                {"spec": bs.spec, "confidence": bs.confidence, "normal": False, "exceptional": False},
            )
            entry[flag] = True
            if bs.confidence == "low":
                entry["confidence"] = "low"
    return [
        LeakCandidate(binding, info["spec"], info["confidence"], info["normal"], info["exceptional"])
        for binding, info in sorted(found.items(), key=lambda kv: str(kv[0]))
    ]


# -- brute-force path oracle ------------------------------------------------------------


def iter_edge_paths(cfg: CFG, unroll_limit: int = 2, max_paths: int = MAX_PATHS):
    """All Entry->exit edge paths with every edge taken <= unroll_limit times."""
    exits = set(cfg.exits)
    produced = 0

    def ordered(nid: int) -> list[Edge]:
        return sorted(cfg.out_edges(nid), key=lambda e: (e.dst, e.label))

    stack: list[tuple[int, list[Edge], dict[Edge, int]]] = [(cfg.entry, [], {})]
    while stack:
        nid, path, counts = stack.pop()
        if nid in exits:
            produced += 1
            if produced > max_paths:
                raise PathExplosionError(
                    f"more than {max_paths} paths in {cfg.method.method_id}"
                )
            yield path
            continue
        out = ordered(nid)
        # Reversed push so lexicographically smallest continuations pop first.
        for edge in reversed(out):
            if counts.get(edge, 0) >= unroll_limit:
                continue
            new_counts = dict(counts)
            new_counts[edge] = new_counts.get(edge, 0) + 1
            stack.append((edge.dst, path + [edge], new_counts))


def brute_force_paths(cfg: CFG, unroll_limit: int = 2, max_paths: int = MAX_PATHS) -> list[list[int]]:
    """Entry->exit node sequences, deterministic order (testing oracle)."""
    paths = []
    for edge_path in iter_edge_paths(cfg, unroll_limit, max_paths):
        nodes = [cfg.entry] + [e.dst for e in edge_path]
        paths.append(nodes)
    return paths


def replay_path(cfg: CFG, registry: Registry, scope: MethodScope, edge_path: list[Edge]) -> dict:
    """Single-path abstract interpretation (no joins); returns the end env."""
    env: dict = {}
    for edge in edge_path:
        node = cfg.nodes[edge.src]
        env = _node_transfer(scope, registry, node, env, include_acquires=edge.label != EXCEPTION)
    return env


def path_exit_states(
    cfg: CFG,
    registry: Registry,
    class_fields: dict[str, str] | None = None,
    unroll_limit: int = 2,
    max_paths: int = MAX_PATHS,
) -> dict[int, dict]:
    """Join of per-path end environments, per exit node (the oracle's view)."""
    scope = MethodScope(cfg.method, class_fields)
    result: dict[int, dict] = {cfg.normal_exit: {}, cfg.exceptional_exit: {}}
    for edge_path in iter_edge_paths(cfg, unroll_limit, max_paths):
        end = edge_path[-1].dst if edge_path else cfg.normal_exit
        env = replay_path(cfg, registry, scope, edge_path)
        result[end] = join_env(result[end], env)
    return result


# -- leak extent classification ------------------------------------------------------------


class LeakExtent(enum.Enum):
    COMPLETE = "complete"
    EXCEPTIONAL_ONLY = "exceptional"
    SOME_NORMAL_PATHS = "normal"


@dataclass(frozen=True)
class ExtentResult:
    extent: LeakExtent
    approximate: bool = False


def classify_extent_detailed(
    cfg: CFG,
    binding: Binding,
    registry: Registry,
    class_fields: dict[str, str] | None = None,
    stop_node: int | None = None,
    unroll_limit: int = 2,
    max_paths: int = MAX_PATHS,
) -> ExtentResult:
    """Classify how a leak candidate leaks across the method's paths.

    With ``stop_node`` set, paths are truncated on first arrival at that
    node and judged there instead of at the exits (used for lost-reference
    events, where the overwrite is the forced leak point).
    """
    scope = MethodScope(cfg.method, class_fields)
    leaking_paths = 0
    leaking_with_exception = 0
    releasing_paths = 0
    try:
        for edge_path in iter_edge_paths(cfg, unroll_limit, max_paths):
            env: dict = {}
            saw_exception = False
            relevant = False
            judged = False
            for edge in edge_path:
                if stop_node is not None and edge.src == stop_node:
                    judged = True
                    break
                node = cfg.nodes[edge.src]
                env = _node_transfer(
                    scope, registry, node, env, include_acquires=edge.label != EXCEPTION
                )
                if edge.label == EXCEPTION:
                    saw_exception = True
                bs = env.get(binding)
                if bs is not None and bs.state.kind == "acquired":
                    relevant = True
            if stop_node is not None and not judged:
                continue
            if not relevant:
                continue
            end_state = env.get(binding, _BOTTOM_BS).state
            if end_state.kind == "acquired" or end_state == MAYBE_RELEASED:
                leaking_paths += 1
                if saw_exception:
                    leaking_with_exception += 1
            elif end_state == RELEASED:
                releasing_paths += 1
    except PathExplosionError:
        released_somewhere = _has_release_node(cfg, scope, registry, binding)
        extent = LeakExtent.SOME_NORMAL_PATHS if released_somewhere else LeakExtent.COMPLETE
        return ExtentResult(extent, approximate=True)

    if releasing_paths == 0:
        return ExtentResult(LeakExtent.COMPLETE)
    if leaking_paths > 0 and leaking_with_exception == leaking_paths:
        return ExtentResult(LeakExtent.EXCEPTIONAL_ONLY)
    return ExtentResult(LeakExtent.SOME_NORMAL_PATHS)


def classify_extent(
    cfg: CFG,
    binding: Binding,
    registry: Registry,
    class_fields: dict[str, str] | None = None,
    stop_node: int | None = None,
) -> LeakExtent:
    return classify_extent_detailed(cfg, binding, registry, class_fields, stop_node).extent


def _has_release_node(cfg: CFG, scope: MethodScope, registry: Registry, binding: Binding) -> bool:
    for node in cfg.statement_nodes():
        if stmt_releases(node.stmt, binding, scope, registry):
            return True
    return False


def stmt_releases(stmt, binding: Binding, scope: MethodScope, registry: Registry) -> bool:
    """Does this statement invoke a releasing API on the given binding?"""
    for expr in _stmt_exprs(stmt):
        for sub in ir.walk_expr(expr):
            if not isinstance(sub, ir.Call):
                continue
            site = call_site(scope, sub)
            try:
                rmatch = registry.release_match(site)
            except AmbiguousMatchError:
                rmatch = None
            receiver = scope.binding_of(sub.receiver)
            if receiver == binding:
                declared = scope.declared_type(binding)
                spec = registry.spec_for_type(declared) if declared else None
                if spec is not None and any(
                    sig.method == sub.method and (sig.arity is None or sig.arity == len(sub.args))
                    for sig in spec.release
                ):
                    return True
                if rmatch is not None:
                    return True
            if rmatch is not None and binding in (
                scope.binding_of(a) for a in sub.args
            ) and _binding_matches_spec(scope, binding, rmatch.spec, {}):
                return True
    return False


def _stmt_exprs(stmt):
    if isinstance(stmt, ir.AssignStmt):
        return [stmt.rhs]
    if isinstance(stmt, ir.ExprStmt):
        return [stmt.expr]
    if isinstance(stmt, (ir.IfStmt, ir.LoopStmt)):
        return [stmt.cond]
    if isinstance(stmt, (ir.ReturnStmt, ir.ThrowStmt)):
        return [stmt.expr]
    return []
