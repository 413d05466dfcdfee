"""The small object argument, cut off after finitely many stages.

Each stage glues a copy of ``cod h`` onto the current middle object for
every commuting square ``(a, b): h -> R`` with ``h`` a generator, pushing out
along ``a``.  The optional Garner modification additionally identifies, at
each later stage, the fresh solution of an old square with the solution it
already had.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .factorization import Factored, FunctorialFactorization
from .fincat import CategoryError, Colimit, FinCategory, Mor, Obj, Square
from .probes import ProbeSet
from .report import checklist, Report

DEFAULT_MAX_STEPS = 8


@dataclass
class Transition:
    """Passage from stage ``alpha`` to stage ``alpha + 1``."""

    squares: list[tuple[int, Square]]  # (generator index, square h -> R_alpha)
    colimit: Colimit                   # nodes: [E_alpha] + [dom h_s, cod h_s] per square
    raw_step: Mor                      # E_alpha -> raw next object
    raw_legs: list[Mor]                # cod h_s -> raw next object
    step: Mor                          # E_alpha -> E_{alpha+1}
    legs: list[Mor]                    # cod h_s -> E_{alpha+1}
    garner: Colimit | None = None      # coequalizer onto E_{alpha+1}, if used
    garner_pairs: list[tuple[Mor, Mor]] = field(default_factory=list)  # (new, old) solutions
    square_index: dict = field(default_factory=dict)

    @property
    def quotient(self) -> Mor | None:
        return None if self.garner is None else self.garner.legs[0]


@dataclass
class Stage:
    index: int
    obj: Obj
    left: Mor   # dom f -> E_alpha
    right: Mor  # E_alpha -> cod f
    converged: bool | None = None  # right leg lifts against every generator


@dataclass
class SoaTrace:
    arrow: Mor
    generators: list[Mor]
    stages: list[Stage] = field(default_factory=list)
    transitions: list[Transition] = field(default_factory=list)
    garner: bool = False

    @property
    def steps(self) -> int:
        return len(self.transitions)

    @property
    def converged(self) -> bool:
        return bool(self.stages[-1].converged)

    @property
    def final(self) -> Stage:
        return self.stages[-1]

    def records(self, C: FinCategory) -> list[dict]:
        """One record per stage, suitable for a machine-readable dump."""
        out = []
        for st in self.stages:
            rec = {"step": st.index, "object": _describe(st.obj), "converged": st.converged}
            if st.index < len(self.transitions):
                tr = self.transitions[st.index]
                rec["squares"] = len(tr.squares)
                if tr.garner is not None:
                    rec["garner"] = {"raw": _describe(tr.raw_step.cod), "quotient": _describe(tr.step.cod),
                                     "pairs": len(tr.garner_pairs)}
            out.append(rec)
        return out

    def dot(self, C: FinCategory, step: int) -> str:
        """The indexing diagram of one transition in graph-description format."""
        tr = self.transitions[step]
        lines = [f"digraph stage{step} {{", f'  E [label="E{step} {_describe(self.stages[step].obj)}"];']
        for k, (i, sq) in enumerate(tr.squares):
            lines.append(f'  X{k} [label="dom h{i}"]; Y{k} [label="cod h{i}"];')
            lines.append(f'  X{k} -> E [label="top"]; X{k} -> Y{k} [label="h{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _describe(A: Obj):
    return len(A.data) if A.flavor == "finset" else list(A.data)


def _require_colimits(C: FinCategory):
    if not C.has_colimits():
        raise CategoryError(f"{C.flavor} categories do not support the small object argument")


def lifts_against_all(C: FinCategory, G: list[Mor], r: Mor) -> bool:
    return all(C.rlp_witness(h, r) is None for h in G)


def _squares(C: FinCategory, G: list[Mor], r: Mor) -> list[tuple[int, Square]]:
    return [(i, sq) for i, h in enumerate(G) for sq in C.squares(h, r)]


def _glue(C: FinCategory, G: list[Mor], E: Obj, squares: list[tuple[int, Square]]) -> Colimit:
    nodes, edges = [E], []
    for i, sq in squares:
        h = G[i]
        x, y = len(nodes), len(nodes) + 1
        nodes += [h.dom, h.cod]
        edges += [(x, 0, sq.top), (x, y, h)]
    return C.graph_colimit(nodes, edges)


def _glue_cocone(C: FinCategory, G: list[Mor], squares, base: Mor, solution) -> list[Mor]:
    """Cocone ``[base] + [base . a_s, solution(k)]`` on a gluing diagram."""
    legs = [base]
    for k, (i, sq) in enumerate(squares):
        legs += [C.compose(base, sq.top), solution(k)]
    return legs


def one_step(C: FinCategory, G: list[Mor], right: Mor) -> tuple[Transition, Mor]:
    """Glue generator codomains along every square into ``right``.

    Returns the transition and the induced right leg of the new stage.
    """
    _require_colimits(C)
    squares = _squares(C, G, right)
    col = _glue(C, G, right.dom, squares)
    raw_step, raw_legs = col.legs[0], [col.legs[2 + 2 * k] for k in range(len(squares))]
    new_right = col.induce(_glue_cocone(C, G, squares, right, lambda k: squares[k][1].bottom), right.cod)
    tr = Transition(squares, col, raw_step, raw_legs, raw_step, raw_legs,
                    square_index={(i, sq): k for k, (i, sq) in enumerate(squares)})
    return tr, new_right


def garner_step(C: FinCategory, G: list[Mor], prev: Transition, tr: Transition,
                right: Mor, right_raw: Mor) -> Mor:
    """Identify new solutions of old squares with their old solutions.

    ``prev`` builds stage ``alpha + 1`` and ``tr`` builds stage ``alpha + 2``
    (raw, before this call); ``right`` is the right leg of stage ``alpha + 1``
    and ``right_raw`` the one induced on the raw next object.  Every square
    ``(a, b)`` of ``prev`` reappears in ``tr`` as ``(step . a, b)``; it then
    has the fresh solution of ``tr`` and the old one pushed forward.  ``tr`` is updated in place with the
    coequalizer; the re-induced right leg is returned.
    """
    pairs: list[tuple[Mor, Mor]] = []
    for k, (i, sq) in enumerate(prev.squares):
        moved = Square(sq.src, right, C.compose(prev.step, sq.top), sq.bottom)
        j = tr.square_index.get((i, moved))
        if j is None:
            raise CategoryError("old square missing from the next stage")
        new, old = tr.raw_legs[j], C.compose(tr.raw_step, prev.legs[k])
        if new.dom != old.dom or new.cod != old.cod:
            raise CategoryError("coequalized maps are not parallel")
        pairs.append((new, old))
    E = tr.raw_step.cod
    nodes, edges = [E], []
    for new, old in pairs:
        y = len(nodes)
        nodes.append(new.dom)
        edges += [(y, 0, new), (y, 0, old)]
    gcol = C.graph_colimit(nodes, edges)
    q = gcol.legs[0]
    tr.garner, tr.garner_pairs = gcol, pairs
    tr.step = C.compose(q, tr.raw_step)
    tr.legs = [C.compose(q, leg) for leg in tr.raw_legs]
    return gcol.induce([right_raw] + [C.compose(right_raw, new) for new, _ in pairs], right_raw.cod)


def iterate_soa(C: FinCategory, G: list[Mor], f: Mor, max_steps: int = DEFAULT_MAX_STEPS,
                garner: bool = False, stop_when_converged: bool = True) -> SoaTrace:
    """Run up to ``max_steps`` stages on ``f``; the convergence test precedes every step."""
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    _require_colimits(C)
    trace = SoaTrace(f, list(G), garner=garner)
    stage = Stage(0, f.dom, C.identity(f.dom), f)
    trace.stages.append(stage)
    while True:
        stage.converged = lifts_against_all(C, G, stage.right)
        if stage.index >= max_steps or (stop_when_converged and stage.converged):
            return trace
        tr, right = one_step(C, G, stage.right)
        if garner and trace.transitions:
            right = garner_step(C, G, trace.transitions[-1], tr, stage.right, right)
        trace.transitions.append(tr)
        stage = Stage(stage.index + 1, tr.step.cod, C.compose(tr.step, stage.left), right)
        trace.stages.append(stage)


class SoaFactorization(FunctorialFactorization):
    """Functorial factorization by a fixed number of stages on every arrow.

    Using one stage count for all arrows is what makes the middle maps of
    squares well defined; they are induced stage by stage from the colimits.
    """

    name = "soa"

    def __init__(self, category: FinCategory, generators: list[Mor], stages: int, garner: bool = False):
        super().__init__(category)
        _require_colimits(category)
        self.generators = list(generators)
        self.stages = stages
        self.garner = garner
        self.partial = False
        self.steps_to_converge: dict[Mor, int | None] = {}
        self._traces: dict[Mor, SoaTrace] = {}
        self._stage_maps: dict[Square, list[Mor]] = {}

    def trace(self, f: Mor) -> SoaTrace:
        t = self._traces.get(f)
        if t is None:
            t = self._traces[f] = iterate_soa(self.category, self.generators, f, self.stages,
                                              self.garner, stop_when_converged=False)
        return t

    def _factor(self, f: Mor) -> Factored:
        st = self.trace(f).final
        return Factored(st.left, st.obj, st.right)

    def stage_maps(self, sq: Square) -> list[Mor]:
        """``E_alpha(u, v)`` for ``alpha = 0 .. stages``."""
        hit = self._stage_maps.get(sq)
        if hit is not None:
            return hit
        C, G = self.category, self.generators
        f, g, u, v = sq
        tf, tg = self.trace(f), self.trace(g)
        maps = [u]
        for alpha, (trf, trg) in enumerate(zip(tf.transitions, tg.transitions)):
            M = maps[-1]
            right_g = tg.stages[alpha].right

            def solution(k, M=M, trf=trf, trg=trg, right_g=right_g):
                i, s = trf.squares[k]
                moved = Square(s.src, right_g, C.compose(M, s.top), C.compose(v, s.bottom))
                return trg.legs[trg.square_index[i, moved]]

            base = C.compose(trg.step, M)
            raw = trf.colimit.induce(_glue_cocone(C, G, trf.squares, base, solution), trg.step.cod)
            if trf.garner is not None:
                raw = trf.garner.induce([raw] + [C.compose(raw, new) for new, _ in trf.garner_pairs],
                                        trg.step.cod)
            maps.append(raw)
        self._stage_maps[sq] = maps
        return maps

    def _square(self, sq: Square) -> Mor:
        return self.stage_maps(sq)[-1]


def soa_build_factorization(C: FinCategory, G: list[Mor], probes: ProbeSet,
                            max_steps: int = DEFAULT_MAX_STEPS, garner: bool = False) -> SoaFactorization:
    """Find how many stages the probe arrows need, then factor everything with that many.

    Arrows that do not converge within ``max_steps`` mark the result partial.
    """
    steps: dict[Mor, int | None] = {}
    for f in probes.arrows:
        t = iterate_soa(C, G, f, max_steps, garner)
        steps[f] = t.steps if t.converged else None
    needed = [n for n in steps.values() if n is not None]
    partial = any(n is None for n in steps.values())
    N = max_steps if partial else max(needed, default=0)
    F = SoaFactorization(C, G, N, garner)
    F.partial = partial
    F.steps_to_converge = steps
    return F


def soa_report(F: SoaFactorization, probes: ProbeSet) -> Report:
    C = F.category
    report = Report("soa_build_factorization", probes.universe)
    unconverged = [f for f, n in F.steps_to_converge.items() if n is None]
    # not converging within the cap leaves the question open rather than refuting anything
    report.add(checklist("converged", [], unconverged))
    report.detail.update(
        stages=F.stages,
        garner=F.garner,
        steps={C.name_of(f): n for f, n in F.steps_to_converge.items()},
    )
    return report
