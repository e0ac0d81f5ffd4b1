"""Belavin-Drinfeld triples for A_{n-1}.

A triple is stored as sorted tuples of 1-based simple-root indices plus the
graph of ``tau``.  Positive roots are intervals ``(i, j)`` as in
:mod:`ggsr.rootdata`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .rootdata import gram

__all__ = [
    "BDTriple",
    "TripleError",
    "validate",
    "enumerate_triples",
    "inverse",
    "diagram_flip",
    "orbit_of",
    "orbits",
    "Orbit",
    "extend_tau",
    "precedes",
    "prec_pairs",
    "g1_roots",
]


class TripleError(ValueError):
    """Malformed triple data (as opposed to a well-formed but invalid triple)."""


@dataclass(frozen=True, order=True)
class BDTriple:
    n: int
    gamma1: tuple
    gamma2: tuple
    tau: tuple  # ((source, image), ...) sorted by source

    @classmethod
    def from_map(cls, n: int, tau: dict) -> "BDTriple":
        pairs = tuple(sorted((int(a), int(b)) for a, b in tau.items()))
        return cls(n, tuple(a for a, _ in pairs), tuple(sorted(b for _, b in pairs)), pairs)

    @classmethod
    def trivial(cls, n: int) -> "BDTriple":
        return cls(n, (), (), ())

    @property
    def tau_map(self) -> dict:
        return dict(self.tau)

    def key(self) -> tuple:
        return (self.gamma1, self.gamma2, self.tau)

    def encode(self) -> str:
        def js(xs):
            return ",".join(str(x) for x in xs)

        taus = ",".join(f"{a}:{b}" for a, b in self.tau)
        return f"n={self.n};g1={js(self.gamma1)};g2={js(self.gamma2)};tau={taus}"

    @classmethod
    def parse(cls, text: str) -> "BDTriple":
        """Parse ``"n=5;g1=2,3,4;g2=1,2,3;tau=2:1,3:2,4:3"``."""
        fields = {}
        for part in text.strip().split(";"):
            if not part.strip():
                continue
            if "=" not in part:
                raise TripleError(f"bad triple field {part!r}")
            k, v = part.split("=", 1)
            fields[k.strip()] = v.strip()
        missing = {"n", "g1", "g2", "tau"} - set(fields)
        if missing:
            raise TripleError(f"triple encoding lacks {sorted(missing)}")
        try:
            n = int(fields["n"])
            g1 = tuple(sorted(int(x) for x in fields["g1"].split(",") if x))
            g2 = tuple(sorted(int(x) for x in fields["g2"].split(",") if x))
            pairs = []
            for item in fields["tau"].split(","):
                if item:
                    a, b = item.split(":")
                    pairs.append((int(a), int(b)))
        except ValueError as exc:
            raise TripleError(f"cannot parse triple {text!r}: {exc}") from None
        return cls(n, g1, g2, tuple(sorted(pairs)))

    def __str__(self):
        return self.encode()


def _check_wellformed(t: BDTriple) -> None:
    if t.n < 2:
        raise TripleError(f"n must be >= 2, got {t.n}")
    simple = set(range(1, t.n))
    sources = [a for a, _ in t.tau]
    images = [b for _, b in t.tau]
    if len(set(sources)) != len(sources) or len(set(images)) != len(images):
        raise TripleError(f"tau is not a bijection: {t.tau}")
    if set(sources) != set(t.gamma1) or set(images) != set(t.gamma2):
        raise TripleError("tau does not map gamma1 onto gamma2")
    if len(set(t.gamma1)) != len(t.gamma1) or len(set(t.gamma2)) != len(t.gamma2):
        raise TripleError("repeated simple roots")
    if not (set(t.gamma1) <= simple and set(t.gamma2) <= simple):
        raise TripleError(f"simple-root index out of range 1..{t.n - 1}")


def _gram_ok(tau: dict) -> bool:
    keys = list(tau)
    return all(gram(tau[a], tau[b]) == gram(a, b) for a in keys for b in keys)


def _nilpotent(tau: dict) -> bool:
    for a in tau:
        seen = set()
        x = a
        while x in tau:
            if x in seen:
                return False
            seen.add(x)
            x = tau[x]
    return True


def validate(t: BDTriple) -> bool:
    """True iff ``tau`` preserves the Gram form and is nilpotent.

    Raises :class:`TripleError` when the data does not describe a bijection
    ``gamma1 -> gamma2``.
    """
    _check_wellformed(t)
    tau = t.tau_map
    return _gram_ok(tau) and _nilpotent(tau)


def enumerate_triples(n: int) -> list:
    """All valid triples of A_{n-1}, sorted by their string encoding."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    simple = range(1, n)
    out = []
    for size in range(0, n):
        for g1 in itertools.combinations(simple, size):
            for g2 in itertools.combinations(simple, size):
                for img in itertools.permutations(g2):
                    tau = dict(zip(g1, img))
                    if _gram_ok(tau) and _nilpotent(tau):
                        out.append(BDTriple(n, g1, g2, tuple(zip(g1, img))))
    out.sort(key=BDTriple.encode)
    return out


def inverse(t: BDTriple) -> BDTriple:
    return BDTriple.from_map(t.n, {b: a for a, b in t.tau})


def diagram_flip(t: BDTriple) -> BDTriple:
    """Conjugate by the diagram automorphism ``alpha_i -> alpha_{n-i}``."""
    s = lambda i: t.n - i  # noqa: E731
    return BDTriple.from_map(t.n, {s(a): s(b) for a, b in t.tau})


def orbit_of(t: BDTriple) -> frozenset:
    inv = inverse(t)
    return frozenset({t, inv, diagram_flip(t), diagram_flip(inv)})


@dataclass(frozen=True)
class Orbit:
    representative: BDTriple
    members: tuple

    def __len__(self):
        return len(self.members)


def orbits(triples) -> list:
    """Partition ``triples`` into orbits of the C2 x C2 action.

    The representative of each orbit is its member with the smallest
    encoding; orbits are listed by ``|gamma1|`` descending, then encoding.
    """
    pool = set(triples)
    result = []
    seen = set()
    for t in sorted(pool, key=BDTriple.encode):
        if t in seen:
            continue
        orb = orbit_of(t)
        if not orb <= pool:
            raise ValueError(f"input is not closed under the action (at {t})")
        seen |= orb
        members = tuple(sorted(orb, key=BDTriple.encode))
        result.append(Orbit(members[0], members))
    result.sort(key=lambda o: (-len(o.representative.gamma1), o.representative.encode()))
    return result


def g1_roots(t: BDTriple) -> list:
    """Positive roots of the subalgebra generated by ``gamma1`` (intervals)."""
    g1 = set(t.gamma1)
    return [
        (i, j)
        for i in range(1, t.n)
        for j in range(i, t.n)
        if all(k in g1 for k in range(i, j + 1))
    ]


def extend_tau(t: BDTriple) -> dict:
    """Extend ``tau`` to positive roots of ``g1`` with the induced signs.

    Returns ``{root: (image_root, sign)}`` where ``tau(e_root) = sign *
    e_image``.  Root vectors are ``e_[i,j] = [e_alpha_i, e_[i+1,j]]``, which
    equals the matrix unit ``e_{i,j+1}``; ``tau`` is applied letter by letter.
    """
    tau = t.tau_map
    out = {}
    for i, j in sorted(g1_roots(t), key=lambda r: (r[1] - r[0], r)):
        if i == j:
            out[(i, j)] = ((tau[i], tau[i]), 1)
            continue
        (a, b), s = out[(i + 1, j)]
        m = tau[i]
        # [e_{m,m+1}, e_{a,b+1}]
        if m + 1 == a:
            out[(i, j)] = ((m, b), s)
        elif b + 1 == m:
            out[(i, j)] = ((a, m), -s)
        else:
            raise ValueError(f"tau does not send root {(i, j)} to a root")
    return out


def precedes(alpha, beta, signed_map: dict):
    """Whether ``alpha < beta`` in the BD ordering.

    Returns ``(True, k, sign)`` with the minimal ``k >= 1`` such that
    ``tau^k alpha = beta`` and the accumulated sign, else ``(False, 0, 0)``.
    """
    alpha, beta = tuple(alpha), tuple(beta)
    x, sign, k = alpha, 1, 0
    while x in signed_map:
        x, s = signed_map[x]
        sign *= s
        k += 1
        if x == beta:
            return True, k, sign
    return False, 0, 0


def prec_pairs(t: BDTriple) -> list:
    """All ``(alpha, beta, sign)`` with ``alpha < beta``, sorted."""
    m = extend_tau(t)
    out = []
    for alpha in sorted(m):
        x, sign = alpha, 1
        while x in m:
            x, s = m[x]
            sign *= s
            out.append((alpha, x, sign))
    return sorted(out)
