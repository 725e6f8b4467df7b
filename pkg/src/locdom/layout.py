"""Role-labeled vertex maps for generated instances.

Generated graphs are wired gadget by gadget, and both the certificate
mappers and the test suite need to know which vertex plays which part.
A :class:`GadgetLayout` is a bijection between vertex ids and role
strings such as ``"alpha:2:3"`` or ``"he:0:1:2:A"``; it also carries the
generation parameters and the target budget. Layouts serialize to JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator

from .errors import LocdomError, ParseError


@dataclass(frozen=True)
class GadgetLayout:
    variant: str
    params: dict
    budget: int
    n: int
    roles: dict  # role string -> vertex id
    ids: dict = field(default_factory=dict)  # vertex id -> role string

    def __post_init__(self) -> None:
        if not self.ids:
            object.__setattr__(
                self, "ids", {v: role for role, v in self.roles.items()}
            )
        if len(self.roles) != self.n or len(self.ids) != self.n:
            raise LocdomError("layout roles must be a bijection onto the vertex set")

    def id_of(self, role: str) -> int:
        try:
            return self.roles[role]
        except KeyError:
            raise LocdomError(f"no vertex plays role {role!r}") from None

    def role_of(self, v: int) -> str:
        try:
            return self.ids[v]
        except KeyError:
            raise LocdomError(f"vertex {v} has no role") from None

    def has_role(self, role: str) -> bool:
        return role in self.roles

    def select(self, prefix: str) -> list[int]:
        """Ids of all roles starting with ``prefix``, sorted by role string."""
        hits = [(role, v) for role, v in self.roles.items() if role.startswith(prefix)]
        return [v for _, v in sorted(hits)]

    def iter_roles(self, prefix: str) -> Iterator[tuple[str, int]]:
        for role in sorted(self.roles):
            if role.startswith(prefix):
                yield role, self.roles[role]

    def to_json(self) -> str:
        doc = {
            "format": "locdom-layout",
            "version": 1,
            "variant": self.variant,
            "params": self.params,
            "budget": self.budget,
            "n": self.n,
            "roles": self.roles,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def layout_from_json(text: str) -> GadgetLayout:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid layout JSON: {exc}") from None
    if doc.get("format") != "locdom-layout":
        raise ParseError("not a locdom layout file")
    return GadgetLayout(
        variant=doc["variant"],
        params=doc["params"],
        budget=doc["budget"],
        n=doc["n"],
        roles={role: int(v) for role, v in doc["roles"].items()},
    )
