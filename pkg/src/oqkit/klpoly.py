"""Exact integer polynomials in one variable q, constant term first."""

from __future__ import annotations

from dataclasses import dataclass


def _trim(coeffs) -> tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class KLPolynomial:
    """Polynomial with integer coefficients; coeffs[k] is the q^k coefficient."""

    coeffs: tuple[int, ...] = ()

    @staticmethod
    def zero() -> "KLPolynomial":
        return KLPolynomial(())

    @staticmethod
    def one() -> "KLPolynomial":
        return KLPolynomial((1,))

    @staticmethod
    def q(power: int = 1) -> "KLPolynomial":
        return KLPolynomial((0,) * power + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def at_one(self) -> int:
        return sum(self.coeffs)

    def __add__(self, other: "KLPolynomial") -> "KLPolynomial":
        m = max(len(self.coeffs), len(other.coeffs))
        return KLPolynomial(_trim(self.coeff(k) + other.coeff(k) for k in range(m)))

    def __sub__(self, other: "KLPolynomial") -> "KLPolynomial":
        m = max(len(self.coeffs), len(other.coeffs))
        return KLPolynomial(_trim(self.coeff(k) - other.coeff(k) for k in range(m)))

    def __neg__(self) -> "KLPolynomial":
        return KLPolynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "KLPolynomial") -> "KLPolynomial":
        if self.is_zero() or other.is_zero():
            return KLPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return KLPolynomial(_trim(out))

    def scale(self, k: int) -> "KLPolynomial":
        return KLPolynomial(_trim(k * c for c in self.coeffs))

    def shift(self, power: int) -> "KLPolynomial":
        """Multiply by q^power."""
        if self.is_zero():
            return self
        return KLPolynomial((0,) * power + self.coeffs)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                var = "q" if k == 1 else f"q^{k}"
                if c == 1:
                    terms.append(var)
                elif c == -1:
                    terms.append(f"-{var}")
                else:
                    terms.append(f"{c}{var}")
        text = " + ".join(terms)
        return text.replace("+ -", "- ")

    def to_list(self) -> list[int]:
        return list(self.coeffs)
