"""Connection matrices over finite corpora: rank, PSD certificates, congruence."""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import linalg
from .graphs import Corpus, LabeledGraph, enumerate_corpus, glue_product
from .params import HomParameter, WeightedGraph, profile
from .params.hom import graph_profile, label_weight
from .quantum import QuantumGraph, q_add, q_product, q_scale


class EvaluationError(RuntimeError):
    pass


@dataclass(frozen=True)
class ConnectionMatrix:
    members: tuple[LabeledGraph, ...]
    param: str
    entries: list[list[Fraction]] = field(compare=False)

    @property
    def k(self) -> int:
        return self.members[0].k if self.members else 0

    def rank(self) -> int:
        return linalg.rank(self.entries)

    def to_json(self) -> dict:
        from .graphs import text_block

        return {
            "param": self.param,
            "k": self.k,
            "graphs": [text_block(g) for g in self.members],
            "matrix": [[str(x) for x in row] for row in self.entries],
            "rank": self.rank(),
        }


def _members(corpus) -> tuple[LabeledGraph, ...]:
    return tuple(corpus.members if isinstance(corpus, Corpus) else corpus)


def _hom_gram(h: WeightedGraph, members) -> list[list[Fraction]]:
    # hom(F1 F2) = sum_phi alpha(phi) hom_phi(F1) hom_phi(F2)
    k = members[0].k if members else 0
    phis = list(itertools.product(range(h.n), repeat=k))
    weights = [label_weight(h, phi) for phi in phis]
    profs = []
    for g in members:
        p = graph_profile(g, h)
        profs.append([p[phi] for phi in phis])
    n = len(members)
    out = linalg.zeros(n)
    for i in range(n):
        for j in range(i, n):
            val = sum((w * a * b for w, a, b in zip(weights, profs[i], profs[j])), Fraction(0))
            out[i][j] = out[j][i] = val
    return out


def connection_matrix(f: Callable, corpus, via_profiles: bool = True, jobs: int = 1) -> ConnectionMatrix:
    """Symmetric matrix of f(F_i F_j) over the corpus members.

    Homomorphism parameters use the gluing identity over profiles unless
    ``via_profiles`` is false.  ``jobs`` > 1 assembles rows on a thread pool;
    the result does not depend on it.
    """
    members = _members(corpus)
    name = str(f)
    if via_profiles and isinstance(f, HomParameter) and f.target is not None:
        return ConnectionMatrix(members, name, _hom_gram(f.target, members))
    n = len(members)

    def row(i: int) -> list[Fraction]:
        vals = []
        for j in range(i, n):
            try:
                vals.append(Fraction(f(glue_product(members[i], members[j]))))
            except Exception as e:
                raise EvaluationError(
                    f"{name} failed on the product of corpus members {i} and {j}: {e}"
                ) from e
        return vals

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(row, range(n)))
    else:
        rows = [row(i) for i in range(n)]
    out = linalg.zeros(n)
    for i, vals in enumerate(rows):
        for j, val in enumerate(vals, start=i):
            out[i][j] = out[j][i] = val
    return ConnectionMatrix(members, name, out)


def rank_exact(m) -> int:
    if isinstance(m, ConnectionMatrix):
        m = m.entries
    return linalg.rank(m)


@dataclass(frozen=True)
class PsdCertificate:
    psd: bool
    perm: list[int] | None = None
    lower: list[list[Fraction]] | None = None
    diag: list[Fraction] | None = None
    witness: list[Fraction] | None = None
    value: Fraction | None = None  # w^T M w for the witness

    @property
    def verdict(self) -> str:
        return "PSD" if self.psd else "NOT_PSD"

    def verify(self, m) -> bool:
        """Re-check the certificate by exact arithmetic."""
        if isinstance(m, ConnectionMatrix):
            m = m.entries
        m = linalg.as_matrix(m)
        if self.psd:
            ldl = linalg.LDL(self.perm, self.lower, self.diag)
            return all(d >= 0 for d in self.diag) and ldl.reconstruct() == m
        return linalg.quadratic_form(m, self.witness) < 0

    def to_json(self) -> dict:
        if self.psd:
            return {
                "verdict": "PSD",
                "perm": self.perm,
                "lower": [[str(x) for x in r] for r in self.lower],
                "diag": [str(x) for x in self.diag],
            }
        return {"verdict": "NOT_PSD", "witness": [str(x) for x in self.witness],
                "value": str(self.value)}


def _integral(w: Sequence[Fraction]) -> list[Fraction]:
    from math import gcd, lcm

    d = lcm(*(x.denominator for x in w)) if w else 1
    ints = [int(x * d) for x in w]
    g = 0
    for x in ints:
        g = gcd(g, x)
    g = g or 1
    return [Fraction(x // g) for x in ints]


def psd_certify(m) -> PsdCertificate:
    """Exact PSD decision by pivoted symmetric elimination."""
    if isinstance(m, ConnectionMatrix):
        m = m.entries
    ldl, w = linalg.symmetric_ldl(m)
    if ldl is not None:
        return PsdCertificate(True, ldl.perm, ldl.lower, ldl.diag)
    w = _integral(w)
    return PsdCertificate(False, witness=w, value=linalg.quadratic_form(linalg.as_matrix(m), w))


@dataclass(frozen=True)
class Congruence:
    refuted: bool
    witness: LabeledGraph | None = None
    value: Fraction | None = None
    checked: int = 0

    @property
    def verdict(self) -> str:
        return "REFUTED" if self.refuted else "CONSISTENT_ON_CORPUS"


def congruent_corpus(x, y, f: Callable, corpus) -> Congruence:
    """Look for z in the corpus with f((x - y) z) != 0.

    A refutation is conclusive; consistency only speaks for this corpus.
    """
    x = x if isinstance(x, QuantumGraph) else QuantumGraph.of(x)
    y = y if isinstance(y, QuantumGraph) else QuantumGraph.of(y)
    diff = q_add(x, q_scale(-1, y))
    members = _members(corpus)
    if not diff:
        return Congruence(False, checked=len(members))
    for z in members:
        val = sum((c * f(glue_product(g, z)) for g, c in diff.items()), Fraction(0))
        if val != 0:
            return Congruence(True, z, val, len(members))
    return Congruence(False, checked=len(members))


def congruent_hom_exact(x, y, h: WeightedGraph) -> bool:
    """Exact congruence modulo hom(., H): equal hom_phi profiles."""
    x = x if isinstance(x, QuantumGraph) else QuantumGraph.of(x)
    y = y if isinstance(y, QuantumGraph) else QuantumGraph.of(y)
    k = x.k if x else y.k
    px = profile(x, h) if x else _zero_profile(h, k)
    py = profile(y, h) if y else _zero_profile(h, k)
    return px.values == py.values


def _zero_profile(h, k):
    from .params.hom import HomProfile

    return HomProfile(h, k, {phi: Fraction(0) for phi in itertools.product(range(h.n), repeat=k)})


def witness_graph(cert: PsdCertificate, members: Sequence[LabeledGraph]) -> QuantumGraph:
    k = members[0].k if members else 0
    return QuantumGraph(k, list(zip(members, cert.witness)))


def find_negative_witness(f: Callable, corpus) -> QuantumGraph | None:
    """Quantum graph w over the corpus with f(w^2) < 0, or None if the section is PSD."""
    cm = connection_matrix(f, corpus)
    cert = psd_certify(cm)
    if cert.psd:
        return None
    return witness_graph(cert, cm.members)


def quantum_square_value(f: Callable, w: QuantumGraph) -> Fraction:
    """f(w^2) evaluated term by term on the glued graphs."""
    sq = q_product(w, w)
    return sum((c * f(g) for g, c in sq.items()), Fraction(0))


@dataclass(frozen=True)
class Saturation:
    ranks: list[tuple[int, int]]  # (max_nodes, rank)
    stabilized: bool

    @property
    def rank(self) -> int:
        return self.ranks[-1][1]


def saturate_rank(
    f: Callable,
    k: int,
    start: int | None = None,
    cap: int = 5,
    max_multiplicity: int = 1,
    patience: int = 1,
    jobs: int = 1,
    **flags,
) -> Saturation:
    """Grow the corpus until the rank repeats ``patience`` times in a row or ``cap`` is hit."""
    start = k if start is None else start
    ranks: list[tuple[int, int]] = []
    same = 0
    for size in range(max(start, k), cap + 1):
        corpus = enumerate_corpus(k, size, max_multiplicity, **flags)
        r = connection_matrix(f, corpus, jobs=jobs).rank()
        if ranks and r == ranks[-1][1]:
            same += 1
        else:
            same = 0
        ranks.append((size, r))
        if same >= patience:
            return Saturation(ranks, True)
    return Saturation(ranks, False)
