from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, NamedTuple

from novikov.algebra import StructureConstants
from novikov.catalog import Catalog, Node


class Certificate(NamedTuple):
    kind: str
    detail: str


@dataclass(eq=False)
class PairContext:
    """The pair A -> B under test, with its tensors built once."""
    catalog: Catalog
    source: Node
    target: Node

    @cached_property
    def S_A(self) -> StructureConstants:
        return self.catalog.instantiate_node(self.source)

    @cached_property
    def S_B(self) -> StructureConstants:
        return self.catalog.instantiate_node(self.target)

    @property
    def label(self) -> str:
        return f"{self.source} -> {self.target}"


class BaseCertificate(ABC):
    """
    Abstract base class for non-degeneration certificates.
    Add a new kind by creating a module in novikov/certificates/ and extending this class.

    ``check`` returns a human-readable detail when the certificate proves
    A ↛ B, otherwise None. It never raises for a well-formed pair.
    """
    kind: str

    @abstractmethod
    def check(self, ctx: PairContext, payload: Mapping[str, str]) -> str | None: ...
