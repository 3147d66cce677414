"""Exact exterior algebra on an oriented orthonormal frame of R^n (n <= 8).

A k-form is stored as a dict mapping strictly increasing 1-based index tuples
to rational coefficients.  All operations (wedge, interior product, Hodge
star, inner product, sigma two-step contraction) are exact over Q.

Conventions fixed here and used throughout the package:

* interior product:  (X . alpha)(Y1, ..., Y_{k-1}) = alpha(X, Y1, ...),
  so  e_i . e_I = (-1)^{pos} e_{I minus i}  with pos the 0-based position
  of i inside I;
* Hodge star:  alpha ^ (*beta) = <alpha, beta> vol  for k-forms alpha, beta,
  with vol = e_1 ^ ... ^ e_n;
* the basis (e_I) is orthonormal: <e_I, e_J> = delta_IJ.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .linalg import frac

ZERO = Fraction(0)
ONE = Fraction(1)

Index = tuple  # strictly increasing tuple of 1-based ints


def _sort_index(idx):
    """Sort an index tuple, returning (sorted_tuple, sign); sign 0 if repeated."""
    idx = list(idx)
    sign = 1
    # insertion sort, counting inversions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return tuple(idx), 0
    return tuple(idx), sign


def _merge_sign(i_idx, j_idx):
    """Sign of concatenating two sorted disjoint tuples, or 0 if they overlap."""
    merged = i_idx + j_idx
    out, sign = _sort_index(merged)
    return out, sign


class Form:
    """Exact differential form with constant rational coefficients.

    Immutable by convention: all operations return fresh instances.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs=None):
        if not 0 < n <= 8:
            raise ValueError(f"frame dimension {n} out of supported range 1..8")
        self.n = n
        clean = {}
        if coeffs:
            for idx, c in coeffs.items():
                c = frac(c)
                if c == 0:
                    continue
                sidx, sign = _sort_index(tuple(idx))
                if sign == 0:
                    continue
                if any(not 1 <= i <= n for i in sidx):
                    raise ValueError(f"index {idx} out of range for R^{n}")
                clean[sidx] = clean.get(sidx, ZERO) + sign * c
                if clean[sidx] == 0:
                    del clean[sidx]
        self.coeffs = clean

    # ---------------- constructors ----------------

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    @classmethod
    def scalar(cls, n, c):
        return cls(n, {(): frac(c)})

    @classmethod
    def basis(cls, n, *indices):
        return cls(n, {tuple(indices): ONE})

    @classmethod
    def from_terms(cls, n, terms):
        """terms: iterable of (coefficient, index-tuple)."""
        acc = {}
        for c, idx in terms:
            sidx, sign = _sort_index(tuple(idx))
            if sign == 0:
                continue
            acc[sidx] = acc.get(sidx, ZERO) + sign * frac(c)
        return cls(n, acc)

    @classmethod
    def volume(cls, n):
        return cls(n, {tuple(range(1, n + 1)): ONE})

    # ---------------- basic structure ----------------

    def degrees(self):
        return sorted({len(i) for i in self.coeffs})

    @property
    def degree(self):
        """Degree if homogeneous; raises otherwise.  Zero form: degree 0."""
        degs = self.degrees()
        if not degs:
            return 0
        if len(degs) > 1:
            raise ValueError(f"mixed-degree form (degrees {degs})")
        return degs[0]

    def homogeneous_part(self, k):
        return Form(self.n, {i: c for i, c in self.coeffs.items() if len(i) == k})

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.coeffs.items()))))

    def __getitem__(self, idx):
        sidx, sign = _sort_index(tuple(idx))
        if sign == 0:
            return ZERO
        return sign * self.coeffs.get(sidx, ZERO)

    # ---------------- linear operations ----------------

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        acc = dict(self.coeffs)
        for i, c in other.coeffs.items():
            acc[i] = acc.get(i, ZERO) + c
            if acc[i] == 0:
                del acc[i]
        out = Form.__new__(Form)
        out.n = self.n
        out.coeffs = acc
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = frac(c)
        out = Form.__new__(Form)
        out.n = self.n
        out.coeffs = {} if c == 0 else {i: c * v for i, v in self.coeffs.items()}
        return out

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __truediv__(self, c):
        return self.scale(ONE / frac(c))

    def _check(self, other):
        if self.n != other.n:
            raise ValueError(f"frame dimension mismatch: {self.n} vs {other.n}")

    # ---------------- multiplicative structure ----------------

    def wedge(self, other):
        self._check(other)
        acc = {}
        for i, ci in self.coeffs.items():
            for j, cj in other.coeffs.items():
                merged, sign = _merge_sign(i, j)
                if sign == 0:
                    continue
                acc[merged] = acc.get(merged, ZERO) + sign * ci * cj
                if acc[merged] == 0:
                    del acc[merged]
        out = Form.__new__(Form)
        out.n = self.n
        out.coeffs = acc
        return out

    def __xor__(self, other):
        return self.wedge(other)

    def hook_basis(self, i):
        """Interior product by the frame vector e_i."""
        acc = {}
        for idx, c in self.coeffs.items():
            if i not in idx:
                continue
            pos = idx.index(i)
            rest = idx[:pos] + idx[pos + 1 :]
            sign = -1 if pos % 2 else 1
            acc[rest] = acc.get(rest, ZERO) + sign * c
            if acc[rest] == 0:
                del acc[rest]
        out = Form.__new__(Form)
        out.n = self.n
        out.coeffs = acc
        return out

    def hook(self, vector):
        """Interior product by a vector given as length-n rational coordinates."""
        if isinstance(vector, int):
            return self.hook_basis(vector)
        out = Form.zero(self.n)
        for i, x in enumerate(vector, start=1):
            x = frac(x)
            if x:
                out = out + self.hook_basis(i).scale(x)
        return out

    def hodge(self):
        """Hodge star for the standard orientation and orthonormal frame."""
        n = self.n
        full = tuple(range(1, n + 1))
        acc = {}
        for idx, c in self.coeffs.items():
            comp = tuple(i for i in full if i not in idx)
            _, sign = _sort_index(idx + comp)
            acc[comp] = acc.get(comp, ZERO) + sign * c
        out = Form.__new__(Form)
        out.n = self.n
        out.coeffs = acc
        return out

    def inner(self, other):
        """Pointwise inner product, orthonormal-basis convention."""
        self._check(other)
        if len(self.coeffs) > len(other.coeffs):
            self, other = other, self
        return sum(
            (c * other.coeffs[i] for i, c in self.coeffs.items() if i in other.coeffs),
            ZERO,
        )

    def norm2(self):
        return sum((c * c for c in self.coeffs.values()), ZERO)

    def evaluate(self, *vectors):
        """Evaluate a k-form on k coordinate vectors via iterated hooks."""
        out = self
        for v in vectors:
            out = out.hook(v)
        if out.degrees() not in ([], [0]):
            raise ValueError("number of vectors does not match form degree")
        return out.coeffs.get((), ZERO)

    def pullback(self, q):
        """Substitute e_i -> sum_j q[i][j] e_j in every wedge monomial.

        For a k-form alpha the coefficients transform as
        (pullback alpha)_J = sum_I alpha_I det(q[I, J]) with q[I, J] the
        submatrix on rows I and columns J.
        """
        n = self.n
        rows = [Form(n, {(j,): q[i - 1][j - 1] for j in range(1, n + 1)})
                for i in range(1, n + 1)]
        out = Form.zero(n)
        for idx, c in self.coeffs.items():
            term = Form.scalar(n, c)
            for i in idx:
                term = term.wedge(rows[i - 1])
            out = out + term
        return out

    # ---------------- composite operators ----------------

    def sigma(self, frame=None):
        """The quadratic two-step contraction (1/2) sum_i (e_i . T)^(e_i . T).

        With the default orthonormal frame or any exact orthogonal replacement
        frame (rows of an orthogonal matrix) the result agrees.
        """
        n = self.n
        if frame is None:
            parts = [self.hook_basis(i) for i in range(1, n + 1)]
        else:
            parts = [self.hook(list(row)) for row in frame]
        acc = Form.zero(n)
        for p in parts:
            acc = acc + p.wedge(p)
        return acc.scale(Fraction(1, 2))

    # ---------------- presentation ----------------

    def sorted_terms(self):
        return sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __repr__(self):
        return f"Form({self.n}, {format_form(self)!r})"

    def __str__(self):
        return format_form(self)

    def to_float_dict(self):
        return {i: float(c) for i, c in self.coeffs.items()}


# ---------------- serialization ----------------


def format_form(form):
    """Human- and machine-readable text: '+p/q eIJK' terms, sorted."""
    if form.is_zero():
        return "0"
    pieces = []
    for idx, c in form.sorted_terms():
        sign = "+" if c > 0 else "-"
        mag = abs(c)
        coeff = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        label = "1" if not idx else "e" + "".join(str(i) for i in idx)
        pieces.append(f"{sign}{coeff}*{label}")
    return " ".join(pieces)


def _parse_term(tok):
    """One '+p/q*eIJK' token -> (coefficient, index tuple)."""
    sign = 1
    if tok[0] == "+":
        tok = tok[1:]
    elif tok[0] == "-":
        sign = -1
        tok = tok[1:]
    if "*" in tok:
        cpart, epart = tok.split("*", 1)
    elif "e" in tok:
        pos = tok.index("e")
        cpart, epart = tok[:pos], tok[pos:]
    else:
        cpart, epart = tok, ""
    cpart = cpart.strip()
    try:
        coeff = Fraction(cpart) if cpart else ONE
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse coefficient {cpart!r}: {exc}") from exc
    epart = epart.strip()
    if epart in ("", "1"):
        idx = ()
    else:
        if not epart.startswith("e"):
            raise ValueError(f"cannot parse term {tok!r}")
        digits = epart[1:]
        if not digits.isdigit():
            raise ValueError(f"cannot parse index block {epart!r}")
        idx = tuple(int(d) for d in digits)
        if len(set(idx)) != len(idx):
            raise ValueError(f"repeated index in {epart!r}")
    return sign * coeff, idx


def parse_form(text, n):
    """Inverse of format_form; '#' starts a comment, terms may span lines.

    Accepts omitted '*' and an omitted unit coefficient.  Malformed tokens
    raise ValueError carrying the line and column of the offending term.
    """
    terms = []
    for lineno, raw in enumerate(text.splitlines() or [""], start=1):
        line = raw.split("#", 1)[0]
        # spacing out signs splits the line into sign-led monomial tokens,
        # each of which appears verbatim in the original line
        for tok in line.replace("-", " -").replace("+", " +").split():
            if tok == "0":
                continue
            try:
                terms.append(_parse_term(tok))
            except ValueError as exc:
                column = line.find(tok) + 1
                raise ValueError(
                    f"line {lineno}, column {column}: {exc}") from exc
    return Form.from_terms(n, terms)


def basis_indices(n, k):
    """All degree-k basis index tuples in lexicographic order."""
    return list(combinations(range(1, n + 1), k))


def form_to_vector(form, indices):
    return [form.coeffs.get(i, ZERO) for i in indices]


def vector_to_form(n, vec, indices):
    return Form(n, dict(zip(indices, vec)))
