"""Smith normal form over the integers and finitely generated abelian groups."""

from dataclasses import dataclass


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix):
    """Return ``(D, U, V)`` with ``U @ A @ V == D`` and ``U, V`` unimodular.

    ``D`` is diagonal with nonnegative entries ``d_1 | d_2 | ...``.
    """
    A = [list(map(int, row)) for row in matrix]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        for M in (A, U):
            M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]

    def add_col(src, dst, k):
        for M in (A, V):
            for row in M:
                row[dst] += k * row[src]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
                    if A[t][j]:
                        done = False
            if not done:
                nz = [(abs(A[i][t]), i, t) for i in range(t, rows) if A[i][t]]
                nz += [(abs(A[t][j]), t, j) for j in range(t, cols) if A[t][j]]
                _, i, j = min(nz)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # divisibility: pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return A, U, V


def invariant_factors(matrix):
    """Diagonal of the Smith form (length ``min(rows, cols)``)."""
    D, _, _ = smith_normal_form(matrix)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


@dataclass(frozen=True)
class AbelianGroupStructure:
    """``Z^rank + Z/t_1 + ... + Z/t_k`` with ``1 < t_1 | t_2 | ...``."""

    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion coefficients must be at least 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion coefficients must form a divisibility chain")

    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    def is_free(self):
        return not self.torsion

    def order(self):
        """Order of the group, or ``None`` when infinite."""
        if self.rank:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text == "0":
            return cls(0, ())
        rank = 0
        tors = []
        for part in text.split("+"):
            part = part.strip()
            if part == "Z":
                rank += 1
            elif part.startswith("Z^"):
                rank += int(part[2:])
            elif part.startswith("Z/"):
                tors.append(int(part[2:]))
            else:
                raise ValueError(f"bad summand {part!r}")
        return cls.from_orders(rank, tors)

    @classmethod
    def from_orders(cls, rank, orders):
        """Normalize an arbitrary list of cyclic orders into invariant factors."""
        orders = [abs(int(o)) for o in orders]
        rank += sum(1 for o in orders if o == 0)
        diag = [o for o in orders if o > 1]
        if not diag:
            return cls(rank, ())
        D = invariant_factors([[diag[i] if i == j else 0 for j in range(len(diag))]
                               for i in range(len(diag))])
        return cls(rank, tuple(d for d in D if d > 1))

    @classmethod
    def cokernel(cls, relations, ngens):
        """Group ``Z^ngens / rowspan(relations)``."""
        relations = [list(r) for r in relations]
        if not relations:
            return cls(ngens, ())
        d = invariant_factors(relations)
        nonzero = [x for x in d if x]
        rank = ngens - len(nonzero)
        return cls(rank, tuple(x for x in nonzero if x > 1))
