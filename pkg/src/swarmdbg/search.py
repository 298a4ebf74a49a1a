"""Breakpoint search over type names and method signatures.

Identifiers are split on punctuation and camelCase humps and lowercased;
queries match whole tokens. Fuzzy mode uses the optimal-string-alignment
variant of Damerau-Levenshtein with a length-scheduled distance bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fnmatch import fnmatchcase
import re
from typing import Any, Optional

from .errors import EmptyQuery
from .model import Breakpoint, canonical_json
from .store import QueryFilter, StoreSnapshot, query_breakpoints

__all__ = [
    "SearchHit",
    "SearchMode",
    "SearchQuery",
    "damerau_levenshtein",
    "fuzzy_distance_bound",
    "search_breakpoints",
    "tokenize_identifier",
]


class SearchMode(str, Enum):
    FUZZY = "Fuzzy"
    MATCH = "Match"
    WILDCARD = "Wildcard"


class MatchedField(str, Enum):
    TYPE_NAME = "TypeName"
    METHOD_SIGNATURE = "MethodSignature"


@dataclass(frozen=True)
class SearchQuery:
    text: str
    mode: SearchMode = SearchMode.FUZZY
    filter: QueryFilter = QueryFilter()


@dataclass(frozen=True)
class SearchHit:
    breakpoint: Breakpoint
    matched_field: MatchedField
    score: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "breakpoint": self.breakpoint.to_dict(),
            "matched_field": self.matched_field.value,
            "score": self.score,
        }


_HUMP_RE = re.compile(r"(?<=[a-z0-9])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])")
_NON_ALNUM_RE = re.compile(r"[^A-Za-z0-9]+")


def tokenize_identifier(name: str) -> list[str]:
    """Split on punctuation, then on camelCase humps; lowercase all parts."""
    tokens: list[str] = []
    for chunk in _NON_ALNUM_RE.split(name):
        if not chunk:
            continue
        for part in _HUMP_RE.split(chunk):
            if part:
                tokens.append(part.lower())
    return tokens


def damerau_levenshtein(a: str, b: str) -> int:
    """Optimal string alignment distance (adjacent transposition counts 1)."""
    la, lb = len(a), len(b)
    if la == 0:
        return lb
    if lb == 0:
        return la
    prev2: list[int] = []
    prev = list(range(lb + 1))
    for i in range(1, la + 1):
        current = [i] + [0] * lb
        for j in range(1, lb + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            current[j] = min(prev[j] + 1, current[j - 1] + 1, prev[j - 1] + cost)
            if (i > 1 and j > 1 and a[i - 1] == b[j - 2] and a[i - 2] == b[j - 1]):
                current[j] = min(current[j], prev2[j - 2] + 1)
        prev2 = prev
        prev = current
    return prev[lb]


def fuzzy_distance_bound(query: str) -> int:
    return 1 if len(query) <= 5 else 2


def search_breakpoints(snapshot: StoreSnapshot, query: SearchQuery) -> list[SearchHit]:
    """Rank filtered breakpoints against the query; best hit per breakpoint."""
    text = query.text.strip()
    if not text:
        raise EmptyQuery("search text is empty")
    needle = text.lower()
    mode = SearchMode(query.mode)
    bound = fuzzy_distance_bound(text)

    hits: list[SearchHit] = []
    for bp in query_breakpoints(snapshot, query.filter):
        entity = snapshot.types[bp.type_id]
        fields: list[tuple[MatchedField, str]] = [
            (MatchedField.TYPE_NAME, entity.simple_name)]
        if bp.method_id is not None:
            method = snapshot.methods[bp.method_id]
            fields.append((MatchedField.METHOD_SIGNATURE, method.signature))
        best: Optional[tuple[float, MatchedField]] = None
        for matched_field, name in fields:
            score = _score(tokenize_identifier(name), needle, mode, bound)
            if score is None:
                continue
            if best is None or score > best[0]:
                best = (score, matched_field)
        if best is not None:
            hits.append(SearchHit(breakpoint=bp, matched_field=best[1], score=best[0]))
    hits.sort(key=lambda h: (-h.score, -h.breakpoint.created_at, h.breakpoint.id))
    return hits


def _score(tokens: list[str], needle: str, mode: SearchMode,
           bound: int) -> Optional[float]:
    if mode is SearchMode.MATCH:
        return 1.0 if needle in tokens else None
    if mode is SearchMode.WILDCARD:
        return 1.0 if fnmatchcase(" ".join(tokens), needle) else None
    best_distance: Optional[int] = None
    for token in tokens:
        d = damerau_levenshtein(token, needle)
        if d <= bound and (best_distance is None or d < best_distance):
            best_distance = d
    if best_distance is None:
        return None
    return 1.0 - best_distance / (bound + 1)


def hits_to_json(hits: list[SearchHit]) -> str:
    return canonical_json([h.to_dict() for h in hits])
