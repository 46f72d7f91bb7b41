"""Runtime value domain: 64-bit integers, doubles, booleans, strings,
fixed arrays, and a growable list object."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

INT_BITS = 64
INT_MIN = -(1 << (INT_BITS - 1))
INT_MAX = (1 << (INT_BITS - 1)) - 1
_MASK = (1 << INT_BITS) - 1


def wrap_int(value: int) -> int:
    """Two's-complement wraparound to the 64-bit signed range."""
    value &= _MASK
    if value > INT_MAX:
        value -= 1 << INT_BITS
    return value


def java_div(a: int, b: int) -> int:
    """Integer division truncating toward zero; caller checks b != 0."""
    q = abs(a) // abs(b)
    if (a < 0) != (b < 0):
        q = -q
    return wrap_int(q)


def java_rem(a: int, b: int) -> int:
    """Remainder with the dividend's sign; caller checks b != 0."""
    return wrap_int(a - java_div(a, b) * b)


def float_div(a: float, b: float) -> float:
    if b == 0.0:
        if a == 0.0 or math.isnan(a):
            return math.nan
        sign = math.copysign(1.0, a) * math.copysign(1.0, b)
        return math.inf if sign > 0 else -math.inf
    return a / b


@dataclass
class JavaArray:
    """Fixed-length array; 2-D arrays nest JavaArray elements."""

    elements: list = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.elements)

    def get(self, index: int):
        if not 0 <= index < len(self.elements):
            raise IndexError(index)
        return self.elements[index]

    def set(self, index: int, value):
        if not 0 <= index < len(self.elements):
            raise IndexError(index)
        self.elements[index] = value

    def render(self) -> str:
        return "[" + ", ".join(render_value(v) for v in self.elements) + "]"


def zero_of(elem_type: str):
    if elem_type in ("int", "long", "short", "byte", "char"):
        return 0
    if elem_type in ("double", "float"):
        return 0.0
    if elem_type == "boolean":
        return False
    return None


def new_array(elem_type: str, dims: list[int]) -> JavaArray:
    if len(dims) == 1:
        return JavaArray([zero_of(elem_type) for _ in range(dims[0])])
    return JavaArray([new_array(elem_type, dims[1:]) for _ in range(dims[0])])


@dataclass
class JavaList:
    """Growable list backing ArrayList/LinkedList/Queue receivers."""

    elements: list = field(default_factory=list)

    def call(self, method: str, args: list):
        if method == "add":
            if len(args) == 2:
                index, value = args
                if not 0 <= index <= len(self.elements):
                    raise IndexError(index)
                self.elements.insert(index, value)
                return None
            self.elements.append(args[0])
            return True
        if method == "remove":
            index = args[0]
            if not 0 <= index < len(self.elements):
                raise IndexError(index)
            return self.elements.pop(index)
        if method == "size":
            return len(self.elements)
        if method == "get":
            index = args[0]
            if not 0 <= index < len(self.elements):
                raise IndexError(index)
            return self.elements[index]
        if method == "set":
            index, value = args
            if not 0 <= index < len(self.elements):
                raise IndexError(index)
            old = self.elements[index]
            self.elements[index] = value
            return old
        if method == "isEmpty":
            return len(self.elements) == 0
        if method == "contains":
            return args[0] in self.elements
        raise KeyError(method)

    MUTATORS = ("add", "remove", "set")

    def render(self) -> str:
        return "[" + ", ".join(render_value(v) for v in self.elements) + "]"


def render_value(value) -> str:
    """Java-style textual form, used in value snapshots and println."""
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (JavaArray, JavaList)):
        return value.render()
    if isinstance(value, float):
        if math.isnan(value):
            return "NaN"
        if math.isinf(value):
            return "Infinity" if value > 0 else "-Infinity"
        if value == int(value) and abs(value) < 1e16:
            return f"{value:.1f}"
        return repr(value)
    return str(value)
