"""Built-in catalog of small modular fusion categories.

Every entry passes :func:`mfclib.modular_data.validate`; conductors are the
minimal N accommodating both the S-matrix and the twists.
"""

from __future__ import annotations

from math import gcd

from .cycmat import CycMat
from .errors import DegenerateData
from .modular_data import ModularData

__all__ = ["su2", "ising", "fibonacci", "pointed_cyclic", "double_cyclic",
           "catalog", "catalog_ids", "from_id"]

MAX_SU2_LEVEL = 28


def su2(k: int) -> ModularData:
    """Quantum sl2 at level k: rank k+1, conductor 4(k+2)."""
    if not 1 <= k <= MAX_SU2_LEVEL:
        raise ValueError(f"su2 level must be in 1..{MAX_SU2_LEVEL}")
    h = k + 2
    n = 4 * h
    rank = k + 1
    entries = []
    for a in range(rank):
        row = []
        for b in range(rank):
            m = (a + 1) * (b + 1)
            # quantum integer [m] at q = zeta_{2h} = zeta_n^2
            counts = [0] * n
            e = (2 * (m - 1)) % n
            for _ in range(m):
                counts[e] += 1
                e = (e - 4) % n
            row.append([(exp, c) for exp, c in enumerate(counts) if c])
        entries.append(row)
    smat = CycMat.from_root_sums(n, entries)
    t_exp = [a * (a + 2) % n for a in range(rank)]
    return ModularData(f"su2_{k}", n, [str(a) for a in range(rank)], 0, smat, t_exp)


def ising() -> ModularData:
    """Rank 3 Ising-type data with twist exponent 1 at the sigma object."""
    n = 16
    s2 = [(2, 1), (14, 1)]     # sqrt(2)
    ms2 = [(2, -1), (14, -1)]
    one = [(0, 1)]
    entries = [
        [one, s2, one],
        [s2, [], ms2],
        [one, ms2, one],
    ]
    smat = CycMat.from_root_sums(n, entries)
    return ModularData("ising", n, ["1", "sigma", "eps"], 0, smat, [0, 1, 8])


def fibonacci() -> ModularData:
    """Rank 2 golden-ratio data: d_tau = (1+sqrt5)/2, theta_tau = zeta_5^2."""
    n = 5
    phi = [(2, -1), (3, -1)]   # -z^2 - z^3 = golden ratio
    entries = [
        [[(0, 1)], phi],
        [phi, [(0, -1)]],
    ]
    smat = CycMat.from_root_sums(n, entries)
    return ModularData("fibonacci", n, ["1", "tau"], 0, smat, [0, 2])


def pointed_cyclic(n: int, q: int) -> ModularData:
    """Pointed category on Z/n with twist theta_a = zeta_{2n}^(q a^2).

    Requires q*n even (well-defined twist) and gcd(q, n) = 1
    (nondegenerate pairing); otherwise DegenerateData.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    q = q % (2 * n)
    if (q * n) % 2 != 0:
        raise DegenerateData("twist exponent q a^2 is not well-defined mod 2n")
    if gcd(q, n) != 1:
        raise DegenerateData("pairing zeta_n^(q a b) is degenerate")
    cond = 2 * n
    # minus sign pairs with the twist convention under the Gauss relation,
    # matching the double_cyclic pairing below
    entries = [[[((-2 * q * a * b) % cond, 1)] for b in range(n)] for a in range(n)]
    smat = CycMat.from_root_sums(cond, entries)
    t_exp = [(q * a * a) % cond for a in range(n)]
    return ModularData(f"pointed_cyclic_{n}_{q}", cond,
                       [str(a) for a in range(n)], 0, smat, t_exp)


def double_cyclic(n: int) -> ModularData:
    """Double of Z/n: simples (a, b), s = zeta_n^-(ad+bc), theta = zeta_n^(ab)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    labels = [f"{a},{b}" for a in range(n) for b in range(n)]
    pairs = [(a, b) for a in range(n) for b in range(n)]
    entries = []
    for a, b in pairs:
        row = []
        for c, d in pairs:
            row.append([((-(a * d + b * c)) % n, 1)])
        entries.append(row)
    smat = CycMat.from_root_sums(n, entries)
    t_exp = [(a * b) % n for a, b in pairs]
    return ModularData(f"double_cyclic_{n}", n, labels, 0, smat, t_exp)


def catalog(kind: str, **params) -> ModularData:
    """Catalog dispatcher: kind in {su2, ising, fibonacci, pointed_cyclic, double_cyclic}."""
    makers = {
        "su2": su2,
        "ising": ising,
        "fibonacci": fibonacci,
        "pointed_cyclic": pointed_cyclic,
        "double_cyclic": double_cyclic,
    }
    if kind not in makers:
        raise ValueError(f"unknown catalog kind {kind!r}")
    return makers[kind](**params)


def catalog_ids() -> list[str]:
    """Identifiers accepted by :func:`from_id`, in listing order."""
    ids = ["ising", "fibonacci"]
    ids += [f"su2_{k}" for k in range(1, MAX_SU2_LEVEL + 1)]
    ids += [f"pointed_cyclic_{n}_{q}" for n in range(1, 9)
            for q in range(2 * n) if (q * n) % 2 == 0 and gcd(q, n) == 1]
    ids += [f"double_cyclic_{n}" for n in range(1, 6)]
    return ids


def from_id(name: str) -> ModularData:
    """Build a catalog entry from its string identifier, e.g. 'su2_4'."""
    if name == "ising":
        return ising()
    if name == "fibonacci":
        return fibonacci()
    if name.startswith("su2_"):
        return su2(int(name[4:]))
    if name.startswith("pointed_cyclic_"):
        parts = name.split("_")
        if len(parts) != 4:
            raise ValueError(f"malformed catalog id {name!r}")
        return pointed_cyclic(int(parts[2]), int(parts[3]))
    if name.startswith("double_cyclic_"):
        return double_cyclic(int(name.split("_")[2]))
    raise ValueError(f"unknown catalog id {name!r}")
