"""Three-valued size-linearity certification from a fixed set of cited facts.

A graph is certified size-linear when it is a forest or a subgraph of a graph
known to be size-linear, and certified not size-linear when it contains a
subgraph H with e(H) >= 2v(H) - 2 or contains a graph known not to be. Any
other graph is reported as unknown; nothing here decides the property itself.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import numpy as np

from . import _kernels
from .graphcore import (
    CanonicalCode,
    Graph,
    canonical_code,
    from_edge_list,
    graph6_decode,
    graph6_encode,
    is_subgraph,
)

EXHAUSTIVE_LIMIT = 20

CITE_FOREST = (
    "Chvatal: r(T,K_n) = (v(T)-1)(n-1)+1 for trees; every H without isolated vertices "
    "lies in K_{2e(H)}, and every forest lies in a tree of the same order"
)
CITE_SIDORENKO = "Sidorenko: r(K_3,H) <= 2e(H)+1 for every H without isolated vertices"
CITE_K4_SUBGRAPHS = "known result: every proper subgraph of K_4 is Ramsey size-linear"
CITE_K4 = "r(K_4,K_n) grows faster than n^2 (Spencer; Mattheus-Verstraete) while e(K_n) = O(n^2)"
CITE_DENSITY = (
    "density criterion: e(H) >= 2v(H)-2 implies H is not Ramsey size-linear "
    "(local lemma bound r(H,K_n) = Omega((n/log n)^((e-1)/(v-2)))), and supergraphs inherit this"
)


class CertifyError(ValueError):
    pass


class KnowledgeBaseConflict(CertifyError):
    """Linear and non-linear justifications fired for the same graph."""


class Status(str, enum.Enum):
    LINEAR = "CertifiedLinear"
    NONLINEAR = "CertifiedNonlinear"
    UNKNOWN = "Unknown"


# ----------------------------------------------------------------------
# analytic formulas
# ----------------------------------------------------------------------


def chvatal_tree_ramsey(tree_order: int, n: int) -> int:
    """r(T, K_n) = (v(T) - 1)(n - 1) + 1 for any tree T."""
    if tree_order < 1 or n < 1:
        raise CertifyError("tree order and clique order must be positive")
    return (tree_order - 1) * (n - 1) + 1


def sidorenko_bound(h: Graph) -> int:
    """Upper bound 2e(H) + 1 on r(K_3, H)."""
    if h.isolated_vertices():
        raise CertifyError("H must not have isolated vertices")
    return 2 * h.n_edges + 1


def forest_linear_bound(t: Graph, h: Graph) -> int:
    """Upper bound (v(T) - 1)(2e(H) - 1) + 1 on r(T, H) for a forest T."""
    if not t.is_forest():
        raise CertifyError("T must be a forest")
    if h.isolated_vertices():
        raise CertifyError("H must not have isolated vertices")
    return chvatal_tree_ramsey(max(t.order, 1), 2 * h.n_edges)


def forest_linear_coefficient(t: Graph) -> int:
    """Integer C with forest_linear_bound(T, H) <= C * e(H) whenever e(H) >= 1."""
    return max(1, 2 * (t.order - 1) + 1)


def lll_exponent(g: Graph) -> Fraction:
    """(e(G) - 1) / (v(G) - 2), the local lemma exponent for r(G, K_n)."""
    if g.order < 3:
        raise CertifyError("exponent is undefined for fewer than 3 vertices")
    return Fraction(g.n_edges - 1, g.order - 2)


# ----------------------------------------------------------------------
# density certificates
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class DensityCertificate:
    witness: Graph
    embedding: tuple[int, ...]
    slack: int
    lll_exponent: Fraction

    def __post_init__(self):
        if self.witness.order < 3 or self.slack < 0:
            raise CertifyError("not a density certificate")

    def check(self, host: Graph) -> bool:
        """Re-verify the certificate against the graph it certifies."""
        w = self.witness
        if len(set(self.embedding)) != w.order:
            return False
        if any(not host.has_edge(self.embedding[u], self.embedding[v]) for u, v in w.edges()):
            return False
        return (
            self.slack == w.n_edges - (2 * w.order - 2)
            and self.lll_exponent == lll_exponent(w)
            and self.lll_exponent > 2
        )

    def to_json(self) -> dict:
        q = self.lll_exponent
        return {
            "witness": graph6_encode(self.witness),
            "embedding": list(self.embedding),
            "slack": self.slack,
            "exponent": f"{q.numerator}/{q.denominator}",
        }

    @classmethod
    def from_json(cls, doc: dict) -> "DensityCertificate":
        num, den = doc["exponent"].split("/")
        return cls(
            graph6_decode(doc["witness"]),
            tuple(doc["embedding"]),
            int(doc["slack"]),
            Fraction(int(num), int(den)),
        )


def certificate_from_vertices(g: Graph, vertices: list[int]) -> DensityCertificate:
    """Certificate for the subgraph induced on ``vertices`` (must satisfy the bound)."""
    w = g.induced_subgraph(vertices)
    return DensityCertificate(w, tuple(vertices), w.n_edges - (2 * w.order - 2), lll_exponent(w))


def _core(g: Graph) -> tuple[Graph, list[int]]:
    verts = g.k_core(3)
    return g.induced_subgraph(verts), verts


def is_dependent(g: Graph, backend: str | None = None) -> bool:
    """True iff some vertex set S spans at least 2|S| - 2 edges (|S| >= 3).

    Runs the (2,3) pebble game, which rejects an edge exactly when the edges
    seen so far stop being (2,3)-sparse.
    """
    core, _ = _core(g)
    if core.order < 4:
        return False
    kern = _kernels.kernels_for(backend or _kernels.default_backend())
    edges = core.edges()
    eu = np.array([e[0] for e in edges], dtype=np.int64)
    ev = np.array([e[1] for e in edges], dtype=np.int64)
    rejected, _ = kern.pebble_game(core.order, eu, ev)
    return int(rejected) >= 0


def _slack_exhaustive(core: Graph, backend: str | None) -> tuple[int, list[int]] | None:
    kern = _kernels.kernels_for(backend or _kernels.default_backend())
    adj = np.array(core.adj, dtype=np.int64)
    best, mask = kern.max_slack(adj, core.order)
    if best < 0:
        return None
    mask = int(mask)
    return int(best), [v for v in range(core.order) if mask >> v & 1]


def _slack_flow(core: Graph) -> tuple[int, list[int]] | None:
    """Max of e(S) - 2|S| + 2 over S containing an edge, by one min cut per edge."""
    import networkx as nx

    n, m = core.order, core.n_edges
    if m == 0:
        return None
    base = nx.DiGraph()
    base.add_nodes_from(["s", "t"])
    for v in range(n):
        base.add_edge("s", v, capacity=m)
        base.add_edge(v, "t", capacity=m + 4 - core.degree(v))
    for u, v in core.edges():
        base.add_edge(u, v, capacity=1)
        base.add_edge(v, u, capacity=1)
    best: tuple[int, list[int]] | None = None
    for u, v in core.edges():
        net = base.copy()
        # no capacity attribute means infinite capacity: u and v stay on the source side
        del net["s"][u]["capacity"]
        del net["s"][v]["capacity"]
        cut, (side, _) = nx.minimum_cut(net, "s", "t")
        value = (m * n - cut) // 2 + 2
        if best is None or value > best[0]:
            best = (value, sorted(x for x in side if x != "s"))
    if best is None or best[0] < 0:
        return None
    return best


def max_density_slack(g: Graph, method: str = "auto", backend: str | None = None):
    """Maximum of e(S) - (2|S| - 2) over vertex sets with |S| >= 3, when it is >= 0.

    Returns ``(slack, vertices)`` or ``None``. A maximiser can always be found
    inside the 3-core: dropping a vertex of degree <= 2 never lowers the slack,
    and no set of 3 vertices reaches slack 0.
    """
    core, verts = _core(g)
    if core.order < 4 or not is_dependent(core, backend):
        return None
    if method == "auto":
        method = "exhaustive" if core.order <= EXHAUSTIVE_LIMIT else "flow"
    if method == "exhaustive":
        if core.order > 62:
            raise CertifyError("exhaustive search needs a 3-core of at most 62 vertices")
        found = _slack_exhaustive(core, backend)
    elif method == "flow":
        found = _slack_flow(core)
    else:
        raise CertifyError(f"unknown method {method!r}")
    if found is None:
        return None
    slack, sub = found
    return slack, [verts[i] for i in sub]


def density_certificate(g: Graph, method: str = "auto", backend: str | None = None) -> DensityCertificate | None:
    """Subgraph maximising e(H) - 2v(H), if it reaches e(H) >= 2v(H) - 2."""
    found = max_density_slack(g, method, backend)
    if found is None:
        return None
    cert = certificate_from_vertices(g, found[1])
    assert cert.slack == found[0]
    return cert


# ----------------------------------------------------------------------
# knowledge base
# ----------------------------------------------------------------------


@dataclass
class KnowledgeBase:
    """Isomorphism classes with known status, each with a citation."""

    linear: dict[CanonicalCode, str] = field(default_factory=dict)
    nonlinear: dict[CanonicalCode, str] = field(default_factory=dict)

    def add(self, g: Graph, status: str, citation: str) -> None:
        code = canonical_code(g)
        if status in ("linear", Status.LINEAR.value):
            if code in self.nonlinear:
                raise KnowledgeBaseConflict(f"{code} is already recorded as not size-linear")
            self.linear.setdefault(code, citation)
        elif status in ("nonlinear", Status.NONLINEAR.value):
            if code in self.linear:
                raise KnowledgeBaseConflict(f"{code} is already recorded as size-linear")
            self.nonlinear.setdefault(code, citation)
        else:
            raise CertifyError(f"unknown status {status!r}")

    @classmethod
    def default(cls) -> "KnowledgeBase":
        kb = cls()
        k3 = from_edge_list(3, [(0, 1), (0, 2), (1, 2)])
        kb.add(k3, "linear", CITE_SIDORENKO)
        for sub in proper_subgraphs_of_k4():
            kb.add(sub, "linear", CITE_K4_SUBGRAPHS)
        kb.add(from_edge_list(4, combinations(range(4), 2)), "nonlinear", CITE_K4)
        return kb

    def load_facts(self, path: str | Path) -> "KnowledgeBase":
        """Merge a JSON list of ``{graph6, status, citation}`` entries."""
        for entry in json.loads(Path(path).read_text()):
            self.add(graph6_decode(entry["graph6"]), entry["status"], entry["citation"])
        return self

    def to_facts(self) -> list[dict]:
        out = [{"graph6": str(c), "status": "linear", "citation": t} for c, t in sorted(self.linear.items())]
        out += [{"graph6": str(c), "status": "nonlinear", "citation": t} for c, t in sorted(self.nonlinear.items())]
        return out


def proper_subgraphs_of_k4() -> list[Graph]:
    """One representative per isomorphism class of proper subgraphs of K_4 (order >= 1)."""
    k4_edges = list(combinations(range(4), 2))
    seen: dict[CanonicalCode, Graph] = {}
    for n in range(1, 5):
        all_edges = list(combinations(range(n), 2))
        for r in range(len(all_edges) + 1):
            for es in combinations(all_edges, r):
                if n == 4 and len(es) == len(k4_edges):
                    continue
                g = from_edge_list(n, es)
                seen.setdefault(canonical_code(g), g)
    return [seen[c] for c in sorted(seen)]


# ----------------------------------------------------------------------
# classification
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class RuleApplication:
    rule: str
    citation: str
    reference: str | None = None

    def to_json(self) -> dict:
        doc = {"rule": self.rule, "citation": self.citation}
        if self.reference is not None:
            doc["reference"] = self.reference
        return doc


@dataclass
class RslVerdict:
    graph: Graph
    status: Status
    justification: list[RuleApplication]
    linear_coefficient: int | None = None
    density: DensityCertificate | None = None

    @property
    def rules(self) -> list[str]:
        return [r.rule for r in self.justification]

    def to_json(self) -> dict:
        doc = {
            "graph": graph6_encode(self.graph),
            "status": self.status.value,
            "rules": [r.to_json() for r in self.justification],
        }
        if self.linear_coefficient is not None:
            doc["linear_coefficient"] = self.linear_coefficient
        if self.density is not None:
            doc["density"] = self.density.to_json()
        return doc


_DEFAULT_KB: KnowledgeBase | None = None


def default_kb() -> KnowledgeBase:
    global _DEFAULT_KB
    if _DEFAULT_KB is None:
        _DEFAULT_KB = KnowledgeBase.default()
    return _DEFAULT_KB


def linear_rules(g: Graph, kb: KnowledgeBase) -> tuple[list[RuleApplication], int | None]:
    rules = []
    coefficient = None
    if g.is_forest():
        rules.append(RuleApplication("forest", CITE_FOREST))
        coefficient = forest_linear_coefficient(g)
    for code, citation in sorted(kb.linear.items()):
        fact = code.graph()
        if fact.order >= g.order and fact.n_edges >= g.n_edges and is_subgraph(g, fact):
            rules.append(RuleApplication("known-linear-supergraph", citation, str(code)))
            break
    return rules, coefficient


def nonlinear_rules(
    g: Graph, kb: KnowledgeBase, backend: str | None = None
) -> tuple[list[RuleApplication], DensityCertificate | None]:
    rules = []
    cert = density_certificate(g, backend=backend)
    if cert is not None:
        rules.append(RuleApplication("density", CITE_DENSITY, graph6_encode(cert.witness)))
    for code, citation in sorted(kb.nonlinear.items()):
        fact = code.graph()
        if fact.order <= g.order and fact.n_edges <= g.n_edges and is_subgraph(fact, g):
            rules.append(RuleApplication("known-nonlinear-subgraph", citation, str(code)))
            break
    return rules, cert


def classify(g: Graph, kb: KnowledgeBase | None = None, backend: str | None = None) -> RslVerdict:
    """Certify ``g`` as size-linear, not size-linear, or unknown, with the rules used."""
    kb = kb if kb is not None else default_kb()
    lin, coefficient = linear_rules(g, kb)
    non, cert = nonlinear_rules(g, kb, backend)
    if lin and non:
        raise KnowledgeBaseConflict(
            f"{graph6_encode(g)}: {[r.rule for r in lin]} conflict with {[r.rule for r in non]}"
        )
    if lin:
        return RslVerdict(g, Status.LINEAR, lin, linear_coefficient=coefficient)
    if non:
        return RslVerdict(g, Status.NONLINEAR, non, density=cert)
    return RslVerdict(g, Status.UNKNOWN, [])
