"""Forward-mode dual numbers carrying a full gradient vector."""

from __future__ import annotations

import numpy as np


class GradDual:
    """Value plus gradient with respect to n independent inputs."""

    __slots__ = ("value", "grad")

    def __init__(self, value: float, grad: np.ndarray):
        self.value = float(value)
        self.grad = grad

    @classmethod
    def seed(cls, value: float, index: int, size: int) -> "GradDual":
        grad = np.zeros(size)
        grad[index] = 1.0
        return cls(value, grad)

    def _lift(self, other) -> "GradDual":
        if isinstance(other, GradDual):
            return other
        return GradDual(float(other), np.zeros_like(self.grad))

    def __add__(self, other):
        o = self._lift(other)
        return GradDual(self.value + o.value, self.grad + o.grad)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return GradDual(self.value - o.value, self.grad - o.grad)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return GradDual(self.value * o.value, self.grad * o.value + self.value * o.grad)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        inv = 1.0 / o.value
        return GradDual(self.value * inv, (self.grad * o.value - self.value * o.grad) * inv * inv)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __neg__(self):
        return GradDual(-self.value, -self.grad)

    def __pow__(self, exponent: int):
        if exponent == 0:
            return GradDual(1.0, np.zeros_like(self.grad))
        return GradDual(self.value**exponent, exponent * self.value ** (exponent - 1) * self.grad)

    def __repr__(self) -> str:
        return f"GradDual({self.value!r}, {self.grad!r})"
