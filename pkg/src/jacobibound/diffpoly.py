"""Exact sparse differential polynomials over Q.

Indeterminates are derivatives ``x_j^(k)`` (:class:`DerivVar`, ``j`` is
1-based).  A :class:`DiffPoly` maps monomials -- sorted tuples of
``(DerivVar, exponent)`` -- to non-zero ``Fraction`` coefficients.

Text grammar (one equation per line, right-hand side 0 unless ``= rhs`` is
given, ``#`` starts a comment)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('+' | '-') factor | power
    power  := atom ('^' INT)*
    atom   := NUMBER ['/' NUMBER] | VAR | '(' expr ')'
    VAR    := 'x' INT ("'"* | '^(' INT ')')

``x1^(3)`` is the third derivative of x1 while ``x1^3`` is its cube.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import NonConstantCoefficients, NonLinearSystem, ParseError


@total_ordering
@dataclass(frozen=True)
class DerivVar:
    """The k-th derivative of the unknown x_j (j ≥ 1, k ≥ 0)."""

    j: int
    k: int = 0

    def __post_init__(self):
        if self.j < 1 or self.k < 0:
            raise ValueError(f"invalid derivative x{self.j}^({self.k})")

    def __lt__(self, other: "DerivVar") -> bool:
        return (self.j, self.k) < (other.j, other.k)

    def prime(self, times: int = 1) -> "DerivVar":
        return DerivVar(self.j, self.k + times)

    def __str__(self) -> str:
        return f"x{self.j}" if self.k == 0 else f"x{self.j}^({self.k})"


Monomial = tuple  # tuple[tuple[DerivVar, int], ...], sorted by variable


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    exps: dict[DerivVar, int] = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _coerce_coeff(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"coefficient {c!r} must be an int, str or Fraction")


class DiffPoly:
    """Immutable polynomial in derivative indeterminates with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            c = _coerce_coeff(c)
            if c:
                mono = _mono_mul((), tuple((v, e) for v, e in mono if e))
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        self._terms = clean
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, c) -> "DiffPoly":
        return cls({(): c})

    @classmethod
    def var(cls, j: int, k: int = 0) -> "DiffPoly":
        return cls({((DerivVar(j, k), 1),): 1})

    @classmethod
    def _wrap(cls, x) -> "DiffPoly":
        if isinstance(x, DiffPoly):
            return x
        if isinstance(x, DerivVar):
            return cls({((x, 1),): 1})
        return cls.const(x)

    # -- inspection -----------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def variables(self) -> set:
        return {v for mono in self._terms for v, _ in mono}

    def var_indices(self) -> set:
        return {v.j for v in self.variables()}

    def order(self, j: int):
        """Highest k with x_j^(k) present, or ``None`` when x_j is absent."""
        ks = [v.k for v in self.variables() if v.j == j]
        return max(ks) if ks else None

    def total_degree(self) -> int:
        return max((sum(e for _, e in mono) for mono in self._terms), default=0)

    def degree_in(self, v: DerivVar) -> int:
        return max((dict(m).get(v, 0) for m in self._terms), default=0)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    def coefficient(self, monomial) -> Fraction:
        return self._terms.get(tuple(sorted(monomial)), Fraction(0))

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other) -> "DiffPoly":
        other = DiffPoly._wrap(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return DiffPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "DiffPoly":
        return DiffPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "DiffPoly":
        return self + (-DiffPoly._wrap(other))

    def __rsub__(self, other) -> "DiffPoly":
        return DiffPoly._wrap(other) - self

    def __mul__(self, other) -> "DiffPoly":
        other = DiffPoly._wrap(other)
        out: dict[Monomial, Fraction] = {}
        for (m1, c1), (m2, c2) in itertools.product(self._terms.items(), other._terms.items()):
            m = _mono_mul(m1, m2)
            out[m] = out.get(m, Fraction(0)) + c1 * c2
        return DiffPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "DiffPoly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = DiffPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = DiffPoly.const(other)
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"DiffPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- calculus ---------------------------------------------------------
    def partial(self, v: DerivVar) -> "DiffPoly":
        """Formal partial derivative with respect to the indeterminate ``v``."""
        out: dict[Monomial, Fraction] = {}
        for mono, c in self._terms.items():
            exps = dict(mono)
            e = exps.get(v, 0)
            if not e:
                continue
            exps[v] = e - 1
            m = tuple(sorted((w, f) for w, f in exps.items() if f))
            out[m] = out.get(m, Fraction(0)) + c * e
        return DiffPoly(out)

    def differentiate(self, times: int = 1) -> "DiffPoly":
        """Total derivative d/dt, applied ``times`` times (Leibniz rule)."""
        p = self
        for _ in range(times):
            out: dict[Monomial, Fraction] = {}
            for mono, c in p._terms.items():
                for idx, (v, e) in enumerate(mono):
                    exps = dict(mono)
                    exps[v] = e - 1
                    w = v.prime()
                    exps[w] = exps.get(w, 0) + 1
                    m = tuple(sorted((x, f) for x, f in exps.items() if f))
                    out[m] = out.get(m, Fraction(0)) + c * e
            p = DiffPoly(out)
        return p

    def substitute(self, mapping: Mapping) -> "DiffPoly":
        """Replace indeterminates by polynomials (missing ones are kept)."""
        result = DiffPoly()
        for mono, c in self._terms.items():
            term = DiffPoly.const(c)
            for v, e in mono:
                term = term * (DiffPoly._wrap(mapping[v]) ** e if v in mapping else DiffPoly({((v, e),): 1}))
            result = result + term
        return result

    def eval_mod_p(self, assignment: Mapping, prime: int) -> int:
        return eval_mod_p(self, assignment, prime)


def differentiate(p: DiffPoly, times: int = 1) -> DiffPoly:
    return p.differentiate(times)


def partial(p: DiffPoly, v: DerivVar) -> DiffPoly:
    return p.partial(v)


def eval_mod_p(p: DiffPoly, assignment: Mapping, prime: int) -> int:
    """Evaluate modulo ``prime``; every indeterminate must be assigned."""
    total = 0
    for mono, c in p._terms.items():
        den = c.denominator % prime
        if den == 0:
            raise ZeroDivisionError(f"coefficient {c} has denominator divisible by {prime}")
        term = c.numerator * pow(den, -1, prime) % prime
        for v, e in mono:
            if v not in assignment:
                raise KeyError(f"unassigned variable {v}")
            term = term * pow(int(assignment[v]) % prime, e, prime) % prime
        total = (total + term) % prime
    return total


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _mono_key(mono: Monomial):
    return tuple((v.j, v.k, e) for v, e in mono)


def format_poly(p: DiffPoly) -> str:
    """Canonical text: monomials ordered by (j, k, exponent) lexicographically."""
    if p.is_zero():
        return "0"
    pieces = []
    for mono in sorted(p._terms, key=_mono_key):
        c = p._terms[mono]
        factors = [str(v) if e == 1 else f"{v}^{e}" for v, e in mono]
        mag = abs(c)
        if not factors:
            body = _format_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_format_coeff(mag)] + factors)
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def format_system(system: Iterable[DiffPoly]) -> str:
    return "".join(format_poly(p) + "\n" for p in system)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"""(?P<ws>[ \t]+)
      | (?P<var>x(?P<vj>\d+)(?:(?P<primes>'+)|\^\((?P<vk>\d+)\))?)
      | (?P<num>\d+)
      | (?P<op>[-+*/^()=])
    """,
    re.VERBOSE,
)


class _Parser:
    def __init__(self, text: str, line: int):
        self.text = text
        self.line = line
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
            if not m.group("ws"):
                self.tokens.append((m, pos + 1))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, len(self.text) + 1)

    def error(self, msg: str):
        _, col = self.peek()
        raise ParseError(msg, self.line, col)

    def take_op(self, op: str) -> bool:
        m, _ = self.peek()
        if m is not None and m.group("op") == op:
            self.i += 1
            return True
        return False

    def equation(self) -> DiffPoly:
        lhs = self.expr()
        if self.take_op("="):
            lhs = lhs - self.expr()
        if self.i != len(self.tokens):
            self.error("unexpected token")
        return lhs

    def expr(self) -> DiffPoly:
        acc = self.term()
        while True:
            if self.take_op("+"):
                acc = acc + self.term()
            elif self.take_op("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> DiffPoly:
        acc = self.factor()
        while self.take_op("*"):
            acc = acc * self.factor()
        return acc

    def factor(self) -> DiffPoly:
        if self.take_op("-"):
            return -self.factor()
        if self.take_op("+"):
            return self.factor()
        return self.power()

    def power(self) -> DiffPoly:
        base = self.atom()
        while self.take_op("^"):
            m, _ = self.peek()
            if m is None or not m.group("num"):
                self.error("expected an integer exponent")
            self.i += 1
            base = base ** int(m.group("num"))
        return base

    def atom(self) -> DiffPoly:
        m, _ = self.peek()
        if m is None:
            self.error("unexpected end of equation")
        if m.group("num"):
            self.i += 1
            value = Fraction(int(m.group("num")))
            if self.take_op("/"):
                d, _ = self.peek()
                if d is None or not d.group("num"):
                    self.error("expected a denominator")
                if int(d.group("num")) == 0:
                    self.error("zero denominator")
                self.i += 1
                value /= int(d.group("num"))
            return DiffPoly.const(value)
        if m.group("var"):
            j = int(m.group("vj"))
            if j < 1:
                self.error("variable indices start at 1")
            self.i += 1
            if m.group("primes"):
                k = len(m.group("primes"))
            elif m.group("vk") is not None:
                k = int(m.group("vk"))
            else:
                k = 0
            return DiffPoly.var(j, k)
        if self.take_op("("):
            inner = self.expr()
            if not self.take_op(")"):
                self.error("expected ')'")
            return inner
        self.error("unexpected token")


def parse_poly(text: str, line: int = 1) -> DiffPoly:
    body = text.split("#", 1)[0]
    if not body.strip():
        raise ParseError("empty equation", line, 1)
    return _Parser(body, line).equation()


def parse_system(text: str) -> list[DiffPoly]:
    """Parse one equation per non-blank line."""
    system = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.split("#", 1)[0].strip():
            continue
        system.append(parse_poly(line, lineno))
    return system


# ---------------------------------------------------------------------------
# univariate polynomials over Q and the operator determinant
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UPoly:
    """Univariate polynomial over Q; ``coeffs[k]`` multiplies y^k (no trailing zeros)."""

    coeffs: tuple = ()

    @staticmethod
    def make(coeffs) -> "UPoly":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return UPoly(tuple(cs))

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __add__(self, o: "UPoly") -> "UPoly":
        m = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (m - len(self.coeffs))
        b = list(o.coeffs) + [Fraction(0)] * (m - len(o.coeffs))
        return UPoly.make(x + y for x, y in zip(a, b))

    def __neg__(self) -> "UPoly":
        return UPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, o: "UPoly") -> "UPoly":
        return self + (-o)

    def __mul__(self, o: "UPoly") -> "UPoly":
        if not self.coeffs or not o.coeffs:
            return UPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return UPoly.make(out)

    def exact_div(self, d: "UPoly") -> "UPoly":
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(d.coeffs) + 1, 0)
        lead = d.leading()
        for k in range(len(q) - 1, -1, -1):
            c = rem[k + len(d.coeffs) - 1] / lead
            q[k] = c
            if c:
                for i, dc in enumerate(d.coeffs):
                    rem[k + i] -= c * dc
        if any(rem):
            raise ArithmeticError("inexact polynomial division")
        return UPoly.make(q)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mon = "" if k == 0 else ("y" if k == 1 else f"y^{k}")
            mag = abs(c)
            coef = _format_coeff(mag)
            body = coef if not mon else (mon if mag == 1 else f"{coef}*{mon}")
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sg, body in parts[1:]:
            out += f" {sg} {body}"
        return out


def bareiss_det(M: list[list[UPoly]]) -> UPoly:
    """Fraction-free (Bareiss) determinant over Q[y]."""
    n = len(M)
    if n == 0:
        return UPoly.make([1])
    a = [row[:] for row in M]
    sign = 1
    prev = UPoly.make([1])
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if swap is None:
                return UPoly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def expansion_det(M: list[list[UPoly]]) -> UPoly:
    """Determinant by cofactor expansion along the first row (small n only)."""
    n = len(M)
    if n == 0:
        return UPoly.make([1])
    if n == 1:
        return M[0][0]
    total = UPoly()
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        term = M[0][j] * expansion_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def operator_matrix(system: list[DiffPoly], n: int | None = None) -> list[list[UPoly]]:
    """m_{i,j}(y) = Σ_k c_{i,j,k} y^k for linear homogeneous constant-coefficient equations."""
    if n is None:
        n = max((max(p.var_indices(), default=0) for p in system), default=0)
    M = [[[] for _ in range(n)] for _ in system]
    for i, p in enumerate(system):
        for mono, c in p._terms.items():
            if mono == ():
                raise NonLinearSystem(f"equation {i + 1} has a constant term")
            if len(mono) > 1:
                if all(e == 1 for _, e in mono) and len({v.j for v, _ in mono}) == len(mono):
                    raise NonConstantCoefficients(f"equation {i + 1}: a derivative is multiplied by an unknown")
                raise NonLinearSystem(f"equation {i + 1} is not linear")
            (v, e), = mono
            if e != 1:
                raise NonLinearSystem(f"equation {i + 1} is not linear")
            cell = M[i][v.j - 1]
            cell.extend([Fraction(0)] * (v.k + 1 - len(cell)))
            cell[v.k] += c
    return [[UPoly.make(cell) for cell in row] for row in M]


def operator_determinant(system: list[DiffPoly], method: str = "bareiss") -> UPoly:
    """det M(y) of a square linear system with constant coefficients."""
    n = max((max(p.var_indices(), default=0) for p in system), default=0)
    if len(system) != n:
        raise ValueError(f"{len(system)} equations in {n} unknowns: the operator matrix is not square")
    M = operator_matrix(system, n)
    if method == "bareiss":
        return bareiss_det(M)
    if method == "expansion":
        if n > 4:
            raise ValueError("expansion is limited to n <= 4")
        return expansion_det(M)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# determinants of DiffPoly matrices
# ---------------------------------------------------------------------------


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def symbolic_det(M: list[list[DiffPoly]]) -> DiffPoly:
    """Leibniz expansion over all permutations, skipping zero entries."""
    n = len(M)
    total = DiffPoly()
    for perm in itertools.permutations(range(n)):
        entries = [M[i][perm[i]] for i in range(n)]
        if any(e.is_zero() for e in entries):
            continue
        term = DiffPoly.const(_perm_sign(perm))
        for e in entries:
            term = term * e
        total = total + term
    return total


def det_mod_p(M: list[list[int]], prime: int) -> int:
    """Determinant of an integer matrix modulo a prime (Gaussian elimination)."""
    n = len(M)
    a = [[x % prime for x in row] for row in M]
    det = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k] % prime
        inv = pow(a[k][k], -1, prime)
        for r in range(k + 1, n):
            f = a[r][k] * inv % prime
            if f:
                a[r] = [(x - f * y) % prime for x, y in zip(a[r], a[k])]
    return det % prime
