"""
Executable statements about the nullity of the net Laplacian.

Formulas become predictions, inequalities become verifiers and
characterizations become classifiers. Every check returns a CheckResult; a
check whose precondition fails is reported as inapplicable with the reason,
never as a failure.
"""

import json
from enum import Enum
from typing import Callable, Iterable

from pydantic import BaseModel, ConfigDict, Field

from netlap.core import (
    SignedGraph,
    check_edge,
    coalesce,
    delete_edge,
    delete_edges,
    induced_subgraph,
    negate,
    net_degree,
    net_laplacian,
    negative_count,
    positive_count,
)
from netlap.errors import InapplicableError, InputError
from netlap.exactalg import (
    char_poly,
    eigenvalues_float,
    float_nullity,
    inertia,
    nullity,
    rank_exact,
)
from netlap.forests import c1_tree_sum, forest_char_poly
from netlap.settings import get_settings
from netlap.structure import (
    cactus_cycles,
    component_graphs,
    connected_components,
    cut_edges,
    cut_vertices,
    cyclomatic_number,
    is_connected,
    prune_pendant_trees,
    shared_edge_block,
    spanning_tree_edges,
    split_at_cut_vertex,
)

NULLITY_BOUNDS = "nullity_bounds"
MAX_NULLITY = "max_nullity"
CACTUS_PREDICTION = "cactus_prediction"
INTERLACING = "interlacing"
EDGE_STEP = "edge_nullity_step"
CUT_EDGE = "cut_edge_inequality"
COALESCENCE = "coalescence"
TREE_INERTIA = "tree_inertia"
FOREST_ORACLE = "forest_oracle"
C1_CRITERION = "c1_criterion"
CROSS_PATH = "cross_path_nullity"
NEGATION = "negation_invariance"
EDGELESS = "edgeless_nullity"
ADDITIVITY = "component_additivity"
TREE_NULLITY = "tree_nullity"
UNICYCLIC = "unicyclic_nullity"
PRUNING = "pendant_pruning"
CYCLE_EDGE = "cycle_edge_deletion"
DELETION_CHAIN = "deletion_chain"


class CheckResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    applicable: bool
    passed: bool = Field(description="meaningful only when applicable")
    witness: str | None = Field(
        default=None, description="failure details, or the failed precondition when inapplicable"
    )


class VerificationReport(BaseModel):
    checks: list[CheckResult] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks if c.applicable)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.applicable and not c.passed]

    def executed_kinds(self) -> set[str]:
        return {c.name for c in self.checks if c.applicable}

    def merged(self, *others: "VerificationReport") -> "VerificationReport":
        checks = list(self.checks)
        for other in others:
            checks.extend(other.checks)
        # stable sort keeps each check's relative order
        return VerificationReport(checks=sorted(checks, key=lambda c: c.name))

    def summary(self) -> dict[str, dict[str, int]]:
        tally: dict[str, dict[str, int]] = {}
        for c in self.checks:
            row = tally.setdefault(c.name, {"applicable": 0, "passed": 0, "failed": 0, "skipped": 0})
            if not c.applicable:
                row["skipped"] += 1
                continue
            row["applicable"] += 1
            row["passed" if c.passed else "failed"] += 1
        return dict(sorted(tally.items()))

    def to_json(self) -> str:
        return json.dumps([c.model_dump() for c in self.checks])


class NullityBounds(BaseModel):
    model_config = ConfigDict(frozen=True)

    low: int
    high: int


class Regime(str, Enum):
    ALL_UNBALANCED = "all-unbalanced"
    ALL_BALANCED = "all-balanced"
    MIXED = "mixed"


class CactusPrediction(BaseModel):
    model_config = ConfigDict(frozen=True)

    predicted_nullity: int
    balanced_cycle_count: int
    cycle_count: int
    regime: Regime


class MaxNullityClassification(BaseModel):
    model_config = ConfigDict(frozen=True)

    extremal: bool = Field(description="g is K_k joined negatively to K_k, or its negation")
    structural: bool
    rank_one: bool
    witness: str


def _skip(name: str, reason: str) -> CheckResult:
    return CheckResult(name=name, applicable=False, passed=False, witness=reason)


def _outcome(name: str, ok: bool, witness: str) -> CheckResult:
    return CheckResult(name=name, applicable=True, passed=ok, witness=None if ok else witness)


def _all_of(name: str, results: Iterable[CheckResult], empty_reason: str) -> CheckResult:
    applicable = [r for r in results if r.applicable]
    if not applicable:
        return _skip(name, empty_reason)
    failed = next((r for r in applicable if not r.passed), None)
    if failed is None:
        return _outcome(name, True, "")
    return _outcome(name, False, failed.witness or "")


def _is_tree(g: SignedGraph) -> bool:
    return is_connected(g) and g.m == g.n - 1


# nullity bounds


def nullity_bounds(g: SignedGraph) -> NullityBounds:
    """1 <= eta <= min(beta + 1, n - 1) for connected g of order n >= 2."""
    if g.n < 2:
        raise InapplicableError(f"nullity bounds need n >= 2, got n={g.n}")
    if not is_connected(g):
        raise InapplicableError("nullity bounds need a connected graph")
    return NullityBounds(low=1, high=min(cyclomatic_number(g) + 1, g.n - 1))


def check_nullity_bounds(g: SignedGraph, eta: int | None = None) -> CheckResult:
    try:
        bounds = nullity_bounds(g)
    except InapplicableError as e:
        return _skip(NULLITY_BOUNDS, e.reason)
    eta = nullity(g) if eta is None else eta
    return _outcome(
        NULLITY_BOUNDS,
        bounds.low <= eta <= bounds.high,
        f"eta={eta} outside [{bounds.low}, {bounds.high}]",
    )


# cacti


def predict_cactus_nullity(g: SignedGraph) -> CactusPrediction:
    """
    eta = 1 + number of cycles with as many positive as negative edges.

    Trees fall in the all-unbalanced regime; both pure regimes give 1 there.
    """
    if not is_connected(g):
        raise InapplicableError("cactus prediction needs a connected graph")
    block = shared_edge_block(g)
    if block is not None:
        raise InapplicableError(
            f"not a cactus: cycles share an edge in the block on vertices {list(block.vertices)}"
        )
    cycles = cactus_cycles(g)
    balanced = sum(1 for c in cycles if c.balanced_count)
    if balanced == 0:
        regime = Regime.ALL_UNBALANCED
    elif balanced == len(cycles):
        regime = Regime.ALL_BALANCED
    else:
        regime = Regime.MIXED
    return CactusPrediction(
        predicted_nullity=1 + balanced,
        balanced_cycle_count=balanced,
        cycle_count=len(cycles),
        regime=regime,
    )


def check_cactus_prediction(g: SignedGraph, eta: int | None = None) -> CheckResult:
    try:
        prediction = predict_cactus_nullity(g)
    except InapplicableError as e:
        return _skip(CACTUS_PREDICTION, e.reason)
    eta = nullity(g) if eta is None else eta
    return _outcome(
        CACTUS_PREDICTION,
        prediction.predicted_nullity == eta,
        f"regime {prediction.regime.value}: predicted {prediction.predicted_nullity}, exact {eta}",
    )


# maximum nullity


def _join_structure(g: SignedGraph) -> tuple[bool, str]:
    n = g.n
    if n < 2 or n % 2:
        return False, f"order {n} is not a positive even number"
    if g.m != n * (n - 1) // 2:
        return False, "underlying graph is not complete"
    degrees = [net_degree(g, v) for v in range(n)]
    odd = next((v for v, d in enumerate(degrees) if d not in (-1, 1)), None)
    if odd is not None:
        return False, f"vertex {odd} has net-degree {degrees[odd]}"
    if len(set(degrees)) != 1:
        return False, "net-degrees mix +1 and -1"
    # in the join every net-degree is -1; in its negation every one is +1
    negated = degrees[0] == 1
    h = negate(g) if negated else g
    positive = SignedGraph.model_construct(n=n, edges=tuple(e for e in h.edges if e[2] > 0))
    classes = connected_components(positive)
    if len(classes) != 2 or any(len(c) != n // 2 for c in classes):
        return False, f"positive edges form classes of sizes {[len(c) for c in classes]}"
    side = {v: i for i, c in enumerate(classes) for v in c}
    for u, v, s in h.edges:
        if (s > 0) != (side[u] == side[v]):
            return False, f"edge ({u}, {v}) has the wrong sign for classes {classes}"
    label = "negated join" if negated else "join"
    return True, f"{label} with classes {classes[0]} | {classes[1]}"


def classify_max_nullity(g: SignedGraph) -> MaxNullityClassification:
    """
    Decide whether g is K_k with all negative edges to another K_k (or the
    negation of that), both structurally and through rank(L) = 1.
    """
    if not is_connected(g):
        raise InapplicableError("max-nullity classification needs a connected graph")
    structural, witness = _join_structure(g)
    rank_one = rank_exact(net_laplacian(g)) == 1
    return MaxNullityClassification(
        extremal=structural, structural=structural, rank_one=rank_one, witness=witness
    )


def check_max_nullity(g: SignedGraph, eta: int | None = None) -> CheckResult:
    if g.n < 2:
        return _skip(MAX_NULLITY, f"classification needs n >= 2, got n={g.n}")
    try:
        c = classify_max_nullity(g)
    except InapplicableError as e:
        return _skip(MAX_NULLITY, e.reason)
    eta = nullity(g) if eta is None else eta
    attains = eta == g.n - 1
    return _outcome(
        MAX_NULLITY,
        c.structural == attains and c.rank_one == attains,
        f"eta={eta}, n-1={g.n - 1}, structural={c.structural} ({c.witness}), rank_one={c.rank_one}",
    )


# single-edge deletion


def verify_interlacing(
    g: SignedGraph, e: int, spectrum: list[float] | None = None
) -> CheckResult:
    """
    With H = g - e: a positive e gives lam_i(g) >= lam_i(H) >= lam_{i+1}(g),
    a negative e gives lam_i(H) >= lam_i(g) >= lam_{i+1}(H).
    """
    check_edge(g, e)
    sign = g.edges[e][2]
    tol = get_settings().interlacing_tolerance
    upper = eigenvalues_float(net_laplacian(g)) if spectrum is None else spectrum
    lower = eigenvalues_float(net_laplacian(delete_edge(g, e)))
    if sign < 0:
        upper, lower = lower, upper
    for i in range(g.n):
        if upper[i] < lower[i] - tol:
            return _outcome(INTERLACING, False, f"edge {e}: lambda_{i + 1} chain broken ({upper[i]} < {lower[i]})")
        if i + 1 < g.n and lower[i] < upper[i + 1] - tol:
            return _outcome(
                INTERLACING, False, f"edge {e}: lambda_{i + 1}/lambda_{i + 2} chain broken ({lower[i]} < {upper[i + 1]})"
            )
    return _outcome(INTERLACING, True, "")


def verify_edge_nullity_step(g: SignedGraph, e: int, eta: int | None = None) -> CheckResult:
    eta = nullity(g) if eta is None else eta
    after = nullity(delete_edge(g, e))
    return _outcome(EDGE_STEP, abs(after - eta) <= 1, f"edge {e}: eta {eta} -> {after}")


# cut edges and cut vertices


def verify_cut_edge_inequality(g: SignedGraph, e: int, eta: int | None = None) -> CheckResult:
    """eta(g) >= eta(g1) + eta(g2) - 1 where g - e = g1 + g2."""
    if not is_connected(g):
        return _skip(CUT_EDGE, "cut-edge inequality needs a connected graph")
    if e not in cut_edges(g):
        return _skip(CUT_EDGE, f"edge {e} is not a cut edge")
    h = delete_edge(g, e)
    u, v, _ = g.edges[e]
    parts = {c[0]: c for c in connected_components(h)}
    side_u = next(c for c in parts.values() if u in c)
    side_v = next(c for c in parts.values() if v in c)
    eta1 = nullity(induced_subgraph(h, side_u)[0])
    eta2 = nullity(induced_subgraph(h, side_v)[0])
    eta = nullity(g) if eta is None else eta
    return _outcome(CUT_EDGE, eta >= eta1 + eta2 - 1, f"edge {e}: eta={eta} < {eta1} + {eta2} - 1")


def verify_coalescence(g1: SignedGraph, u: int, g2: SignedGraph, v: int) -> CheckResult:
    """eta(g1 . g2) = eta(g1) + eta(g2) - 1 for connected g1, g2."""
    if not (is_connected(g1) and is_connected(g2)):
        return _skip(COALESCENCE, "coalescence needs two connected graphs")
    eta1, eta2 = nullity(g1), nullity(g2)
    eta = nullity(coalesce(g1, u, g2, v))
    return _outcome(COALESCENCE, eta == eta1 + eta2 - 1, f"eta={eta} != {eta1} + {eta2} - 1")


# inertia of signed trees


def verify_tree_inertia(t: SignedGraph) -> CheckResult:
    if not _is_tree(t):
        return _skip(TREE_INERTIA, "not a tree")
    expected = (positive_count(t), negative_count(t), 1)
    actual = inertia(net_laplacian(t))
    return _outcome(TREE_INERTIA, actual == expected, f"inertia {actual}, expected {expected}")


# single-graph checks used by verify_all and the sweeps


def check_cross_path(g: SignedGraph, eta: int | None = None) -> CheckResult:
    L = net_laplacian(g)
    eta = g.n - rank_exact(L) if eta is None else eta
    paths = {"char_poly": char_poly(L).trailing_zeros(), "inertia": inertia(L)[2]}
    if g.n <= get_settings().float_check_max_n:
        paths["float"] = float_nullity(L)
    disagree = {k: x for k, x in paths.items() if x != eta}
    return _outcome(CROSS_PATH, not disagree, f"rank gives {eta}, other paths {disagree}")


def check_negation(g: SignedGraph, eta: int | None = None) -> CheckResult:
    eta = nullity(g) if eta is None else eta
    flipped = negate(g)
    same_matrix = net_laplacian(flipped) == -net_laplacian(g)
    other = nullity(flipped)
    return _outcome(NEGATION, same_matrix and other == eta, f"eta={eta}, eta(-g)={other}, L(-g)=-L(g): {same_matrix}")


def check_edgeless(g: SignedGraph, eta: int | None = None) -> CheckResult:
    eta = nullity(g) if eta is None else eta
    return _outcome(EDGELESS, (eta == g.n) == (g.m == 0), f"eta={eta}, n={g.n}, m={g.m}")


def check_component_additivity(g: SignedGraph, eta: int | None = None) -> CheckResult:
    parts = component_graphs(g)
    if len(parts) < 2:
        return _skip(ADDITIVITY, "graph is connected")
    eta = nullity(g) if eta is None else eta
    pieces = [nullity(part) for part, _ in parts]
    return _outcome(ADDITIVITY, sum(pieces) == eta, f"eta={eta}, components {pieces}")


def check_forest_oracle(g: SignedGraph, eta: int | None = None) -> CheckResult:
    cap = get_settings().oracle_check_max_n
    if g.n > cap:
        return _skip(FOREST_ORACLE, f"order {g.n} above the oracle check limit {cap}")
    exact = list(char_poly(net_laplacian(g)).coeffs)
    oracle = forest_char_poly(g, cap)
    return _outcome(FOREST_ORACLE, exact == oracle, f"char poly {exact}, forest sums {oracle}")


def check_c1_criterion(g: SignedGraph, eta: int | None = None) -> CheckResult:
    cap = get_settings().oracle_check_max_n
    if not is_connected(g):
        return _skip(C1_CRITERION, "c1 criterion needs a connected graph")
    if g.n > cap:
        return _skip(C1_CRITERION, f"order {g.n} above the oracle check limit {cap}")
    eta = nullity(g) if eta is None else eta
    c1 = c1_tree_sum(g, cap).c1
    return _outcome(C1_CRITERION, (eta == 1) == (c1 != 0), f"eta={eta}, c1={c1}")


def check_tree_nullity(g: SignedGraph, eta: int | None = None) -> CheckResult:
    if not _is_tree(g):
        return _skip(TREE_NULLITY, "not a tree")
    eta = nullity(g) if eta is None else eta
    return _outcome(TREE_NULLITY, eta == 1, f"tree with eta={eta}")


def check_unicyclic(g: SignedGraph, eta: int | None = None) -> CheckResult:
    if not is_connected(g) or g.m != g.n:
        return _skip(UNICYCLIC, "not unicyclic")
    (cycle,) = cactus_cycles(g)
    expected = 2 if cycle.balanced_count else 1
    eta = nullity(g) if eta is None else eta
    return _outcome(UNICYCLIC, eta == expected, f"cycle ({cycle.m_plus}+, {cycle.m_minus}-): eta={eta}, expected {expected}")


def check_pendant_pruning(g: SignedGraph, eta: int | None = None) -> CheckResult:
    if not is_connected(g):
        return _skip(PRUNING, "pruning needs a connected graph")
    eta = nullity(g) if eta is None else eta
    pruned = nullity(prune_pendant_trees(g))
    return _outcome(PRUNING, pruned == eta, f"eta={eta}, after pruning {pruned}")


def check_cycle_edge_deletion(g: SignedGraph, eta: int | None = None) -> CheckResult:
    """
    In a cactus, deleting an edge of a balanced-count cycle lowers eta by one;
    deleting an edge of any other cycle leaves it unchanged.
    """
    try:
        predict_cactus_nullity(g)
    except InapplicableError as e:
        return _skip(CYCLE_EDGE, e.reason)
    cycles = cactus_cycles(g)
    if not cycles:
        return _skip(CYCLE_EDGE, "cactus has no cycles")
    eta = nullity(g) if eta is None else eta
    for cycle in cycles:
        expected = eta - 1 if cycle.balanced_count else eta
        for e in cycle.edges:
            after = nullity(delete_edge(g, e))
            if after != expected:
                return _outcome(CYCLE_EDGE, False, f"edge {e}: eta {eta} -> {after}, expected {expected}")
    return _outcome(CYCLE_EDGE, True, "")


def check_deletion_chain(g: SignedGraph, eta: int | None = None) -> CheckResult:
    """Deleting the non-tree edges one at a time moves eta by at most one and ends at 1."""
    if not is_connected(g):
        return _skip(DELETION_CHAIN, "deletion chain needs a connected graph")
    eta = nullity(g) if eta is None else eta
    tree = set(spanning_tree_edges(g))
    extra = [i for i in range(g.m) if i not in tree]
    current = eta
    for step in range(1, len(extra) + 1):
        after = nullity(delete_edges(g, extra[:step]))
        if abs(after - current) > 1:
            return _outcome(DELETION_CHAIN, False, f"step {step}: eta {current} -> {after}")
        current = after
    return _outcome(DELETION_CHAIN, current == 1, f"chain ends at eta={current}")


def check_interlacing(g: SignedGraph, eta: int | None = None) -> CheckResult:
    limit = get_settings().float_check_max_n
    if g.n > limit:
        return _skip(INTERLACING, f"order {g.n} above the float check limit {limit}")
    spectrum = eigenvalues_float(net_laplacian(g))
    return _all_of(INTERLACING, (verify_interlacing(g, e, spectrum) for e in range(g.m)), "graph has no edges")


def check_edge_steps(g: SignedGraph, eta: int | None = None) -> CheckResult:
    eta = nullity(g) if eta is None else eta
    return _all_of(EDGE_STEP, (verify_edge_nullity_step(g, e, eta) for e in range(g.m)), "graph has no edges")


def check_cut_edges(g: SignedGraph, eta: int | None = None) -> CheckResult:
    if not is_connected(g):
        return _skip(CUT_EDGE, "cut-edge inequality needs a connected graph")
    eta = nullity(g) if eta is None else eta
    return _all_of(CUT_EDGE, (verify_cut_edge_inequality(g, e, eta) for e in cut_edges(g)), "no cut edges")


def check_cut_vertices(g: SignedGraph, eta: int | None = None) -> CheckResult:
    if not is_connected(g):
        return _skip(COALESCENCE, "coalescence needs a connected graph")
    results = []
    for w in cut_vertices(g):
        g1, u, g2, v = split_at_cut_vertex(g, w)
        results.append(verify_coalescence(g1, u, g2, v))
    return _all_of(COALESCENCE, results, "no cut vertices")


def check_tree_inertia(g: SignedGraph, eta: int | None = None) -> CheckResult:
    return verify_tree_inertia(g)


GraphCheck = Callable[[SignedGraph, int | None], CheckResult]

GRAPH_CHECKS: dict[str, GraphCheck] = {
    CROSS_PATH: check_cross_path,
    NEGATION: check_negation,
    EDGELESS: check_edgeless,
    ADDITIVITY: check_component_additivity,
    FOREST_ORACLE: check_forest_oracle,
    C1_CRITERION: check_c1_criterion,
    NULLITY_BOUNDS: check_nullity_bounds,
    MAX_NULLITY: check_max_nullity,
    CACTUS_PREDICTION: check_cactus_prediction,
    TREE_NULLITY: check_tree_nullity,
    UNICYCLIC: check_unicyclic,
    TREE_INERTIA: check_tree_inertia,
    INTERLACING: check_interlacing,
    EDGE_STEP: check_edge_steps,
    CUT_EDGE: check_cut_edges,
    COALESCENCE: check_cut_vertices,
    PRUNING: check_pendant_pruning,
    CYCLE_EDGE: check_cycle_edge_deletion,
    DELETION_CHAIN: check_deletion_chain,
}

CHECK_NAMES = tuple(GRAPH_CHECKS)


def run_checks(g: SignedGraph, names: Iterable[str] | None = None, eta: int | None = None) -> list[CheckResult]:
    chosen = CHECK_NAMES if names is None else tuple(names)
    unknown = [name for name in chosen if name not in GRAPH_CHECKS]
    if unknown:
        raise InputError(f"unknown checks {unknown}, expected names from {CHECK_NAMES}")
    eta = nullity(g) if eta is None else eta
    return [GRAPH_CHECKS[name](g, eta) for name in chosen]


def verify_all(g: SignedGraph) -> VerificationReport:
    """Run every check on g; inapplicable checks are reported as skipped."""
    return VerificationReport(checks=run_checks(g))
