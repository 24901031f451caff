from pydantic import BaseModel, ConfigDict, PositiveInt


class Triple(BaseModel):
    """An instance (a, b, c) of the index-realizability problem."""

    model_config = ConfigDict(frozen=True)

    a: PositiveInt
    b: PositiveInt
    c: PositiveInt

    @classmethod
    def of(cls, a: int, b: int, c: int) -> "Triple":
        return cls(a=a, b=b, c=c)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def swapped(self) -> "Triple":
        return Triple(a=self.b, b=self.a, c=self.c)

    def normalized(self) -> "Triple":
        return self if self.a <= self.b else self.swapped()

    def __mul__(self, other: "Triple") -> "Triple":
        return Triple(a=self.a * other.a, b=self.b * other.b, c=self.c * other.c)

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"
