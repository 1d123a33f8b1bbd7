"""Exact arithmetic in the discretely valued field K = Q(t).

Scalars are fractions of polynomials in the uniformizer t with rational
coefficients.  The valuation ring R consists of the scalars of nonnegative
valuation, the residue field is Q (set t = 0), and v(t) = 1.

Polynomials are dense coefficient tuples (ascending powers of t); all
arithmetic is exact via fractions.Fraction.
"""

from __future__ import annotations

import math
from fractions import Fraction

INF = math.inf

# ---------------------------------------------------------------------------
# dense univariate polynomial helpers (coefficient tuples, ascending in t)
# ---------------------------------------------------------------------------


def _trim(coeffs):
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _trim(out)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        if c != 0:
            q[k] = c
            for j, cb in enumerate(b):
                a[k + j] -= c * cb
    return _trim(q), _trim(a)


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a:
        inv = 1 / a[-1]
        a = tuple(c * inv for c in a)
    return a


def _pord(a):
    """Order of vanishing at t = 0; INF for the zero polynomial."""
    for i, c in enumerate(a):
        if c != 0:
            return i
    return INF


class ParseError(ValueError):
    """Raised when a scalar expression does not conform to the grammar."""


class ValuedScalar:
    """An element of K = Q(t) in canonical form.

    Canonical form: gcd(num, den) = 1 and the lowest nonzero coefficient of
    the denominator is 1.  Zero is (0, 1).
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        if isinstance(num, ValuedScalar):
            other = num / den if den != 1 else num
            self.num, self.den = other.num, other.den
            return
        num = self._coerce_poly(num)
        den = self._coerce_poly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = (), (Fraction(1),)
            return
        g = _pgcd(num, den)
        if len(g) > 1 or (g and g[0] != 1):
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        low = next(c for c in den if c != 0)
        if low != 1:
            inv = 1 / low
            num = tuple(c * inv for c in num)
            den = tuple(c * inv for c in den)
        self.num, self.den = num, den

    @staticmethod
    def _coerce_poly(x):
        if isinstance(x, tuple):
            return _trim([Fraction(c) for c in x])
        if isinstance(x, (int, Fraction)):
            return _trim([Fraction(x)])
        if isinstance(x, list):
            return _trim([Fraction(c) for c in x])
        raise TypeError(f"cannot build scalar from {type(x)!r}")

    # ---- constructors -----------------------------------------------------

    @classmethod
    def t_power(cls, e):
        """The scalar t^e for any integer e."""
        if e >= 0:
            return cls(tuple([0] * e + [1]))
        return cls((1,), tuple([0] * (-e) + [1]))

    # ---- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _scalar(other)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return ValuedScalar(num, _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return ValuedScalar(_pneg(self.num), self.den)

    def __sub__(self, other):
        return self + (-_scalar(other))

    def __rsub__(self, other):
        return _scalar(other) + (-self)

    def __mul__(self, other):
        other = _scalar(other)
        return ValuedScalar(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _scalar(other)
        if not other.num:
            raise ZeroDivisionError("division by zero scalar")
        return ValuedScalar(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return _scalar(other) / self

    def __pow__(self, e):
        if e < 0:
            return (ValuedScalar(1) / self) ** (-e)
        out = ValuedScalar(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        try:
            other = _scalar(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    # ---- valuation layer --------------------------------------------------

    def val(self):
        """t-adic valuation; INF exactly for zero."""
        if not self.num:
            return INF
        return _pord(self.num) - _pord(self.den)

    def residue(self):
        """Image in the residue field Q; requires val >= 0."""
        if self.val() < 0:
            raise ValueError("negative valuation has no residue")
        if not self.num:
            return Fraction(0)
        o = _pord(self.den)
        if o > 0:
            # lowest den coefficient sits at t^o; shift both by t^-o
            num = self.num[o:]
            den = self.den[o:]
        else:
            num, den = self.num, self.den
        n0 = num[0] if num else Fraction(0)
        return n0 / den[0]

    def is_polynomial(self):
        return len(self.den) == 1

    def poly_coeffs(self):
        """Coefficient tuple when the scalar is a polynomial in t."""
        if not self.is_polynomial():
            raise ValueError("scalar has a nontrivial denominator")
        return self.num

    # ---- printing ---------------------------------------------------------

    def __str__(self):
        if len(self.den) == 1 and self.den[0] == 1:
            return _poly_str(self.num)
        return f"({_poly_str(self.num)})/({_poly_str(self.den)})"

    def __repr__(self):
        return f"ValuedScalar({self})"


def _scalar(x):
    if isinstance(x, ValuedScalar):
        return x
    return ValuedScalar(x)


def _frac_str(c):
    return str(c)  # Fraction prints p/q in lowest terms, ints plainly


def _poly_str(coeffs):
    if not coeffs:
        return "0"
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            term = _frac_str(c)
        else:
            tpow = "t" if i == 1 else f"t^{i}"
            if c == 1:
                term = tpow
            elif c == -1:
                term = f"-{tpow}"
            else:
                term = f"{_frac_str(c)}*{tpow}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


# ---------------------------------------------------------------------------
# scalar expression parser: integers, t, + - * / ^, parentheses
# ---------------------------------------------------------------------------


def parse_scalar(text):
    """Parse an expression over integers and t into a ValuedScalar."""
    tokens = _tokenize(text)
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else None

    def take(kind=None):
        tok = peek()
        if tok is None or (kind is not None and tok[0] != kind):
            raise ParseError(f"unexpected token at {pos[0]} in {text!r}")
        pos[0] += 1
        return tok

    def atom():
        tok = peek()
        if tok is None:
            raise ParseError(f"unexpected end of input in {text!r}")
        if tok[0] == "int":
            take()
            base = ValuedScalar(tok[1])
        elif tok[0] == "t":
            take()
            base = ValuedScalar((0, 1))
        elif tok[0] == "(":
            take()
            base = expr()
            take(")")
        elif tok[0] == "-":
            take()
            return -atom()
        elif tok[0] == "+":
            take()
            return atom()
        else:
            raise ParseError(f"unexpected {tok[0]!r} in {text!r}")
        while peek() is not None and peek()[0] == "^":
            take()
            sign = 1
            while peek() is not None and peek()[0] in ("-", "+"):
                if take()[0] == "-":
                    sign = -sign
            e = take("int")[1]
            base = base ** (sign * e)
        return base

    def term():
        out = atom()
        while peek() is not None and peek()[0] in ("*", "/"):
            op = take()[0]
            rhs = atom()
            out = out * rhs if op == "*" else out / rhs
        return out

    def expr():
        tok = peek()
        neg = False
        while tok is not None and tok[0] in ("+", "-"):
            if take()[0] == "-":
                neg = not neg
            tok = peek()
        out = term()
        if neg:
            out = -out
        while peek() is not None and peek()[0] in ("+", "-"):
            op = take()[0]
            rhs = term()
            out = out + rhs if op == "+" else out - rhs
        return out

    out = expr()
    if pos[0] != len(tokens):
        raise ParseError(f"trailing input in {text!r}")
    return out


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
        elif ch == "t":
            tokens.append(("t", None))
            i += 1
        elif ch in "+-*/^()":
            tokens.append((ch, None))
            i += 1
        else:
            raise ParseError(f"bad character {ch!r} in {text!r}")
    return tokens


# ---------------------------------------------------------------------------
# matrices over K
# ---------------------------------------------------------------------------


class ValuedMatrix:
    """Rectangular matrix with ValuedScalar entries."""

    __slots__ = ("entries", "rows", "cols")

    def __init__(self, entries):
        self.entries = [[_scalar(e) for e in row] for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, d):
        return cls([[1 if i == j else 0 for j in range(d)] for i in range(d)])

    @classmethod
    def diag_t(cls, exps):
        """diag(t^e1, ..., t^ed)."""
        d = len(exps)
        return cls([[ValuedScalar.t_power(exps[i]) if i == j else 0
                     for j in range(d)] for i in range(d)])

    @classmethod
    def parse(cls, rows):
        return cls([[parse_scalar(e) if isinstance(e, str) else e for e in row]
                    for row in rows])

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __eq__(self, other):
        return isinstance(other, ValuedMatrix) and self.entries == other.entries

    def __mul__(self, other):
        if isinstance(other, ValuedMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            return ValuedMatrix(
                [[sum((self.entries[i][k] * other.entries[k][j]
                       for k in range(self.cols)), ValuedScalar(0))
                  for j in range(other.cols)] for i in range(self.rows)])
        return ValuedMatrix([[e * other for e in row] for row in self.entries])

    def column(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def det(self):
        """Exact determinant by fraction-free elimination over K."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        m = [row[:] for row in self.entries]
        det = ValuedScalar(1)
        for k in range(n):
            piv = None
            for i in range(k, n):
                if m[i][k]:
                    piv = i
                    break
            if piv is None:
                return ValuedScalar(0)
            if piv != k:
                m[k], m[piv] = m[piv], m[k]
                det = -det
            det = det * m[k][k]
            inv = ValuedScalar(1) / m[k][k]
            for i in range(k + 1, n):
                if not m[i][k]:
                    continue
                f = m[i][k] * inv
                for j in range(k, n):
                    m[i][j] = m[i][j] - f * m[k][j]
        return det

    def inverse(self):
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        m = [row[:] + [ValuedScalar(1 if i == j else 0) for j in range(n)]
             for i, row in enumerate(self.entries)]
        for k in range(n):
            piv = None
            for i in range(k, n):
                if m[i][k]:
                    piv = i
                    break
            if piv is None:
                raise ValueError("singular matrix")
            m[k], m[piv] = m[piv], m[k]
            inv = ValuedScalar(1) / m[k][k]
            m[k] = [e * inv for e in m[k]]
            for i in range(n):
                if i == k or not m[i][k]:
                    continue
                f = m[i][k]
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
        return ValuedMatrix([row[n:] for row in m])

    def transpose(self):
        return ValuedMatrix([[self.entries[i][j] for i in range(self.rows)]
                             for j in range(self.cols)])

    def min_valuation(self):
        return min(e.val() for row in self.entries for e in row)

    def scale(self, s):
        s = _scalar(s)
        return ValuedMatrix([[e * s for e in row] for row in self.entries])

    def residue_matrix(self):
        """Entrywise residue; requires all valuations >= 0."""
        return [[e.residue() for e in row] for row in self.entries]

    def __str__(self):
        return "[" + "; ".join(", ".join(str(e) for e in row)
                               for row in self.entries) + "]"

    __repr__ = __str__
