"""Name ingestion and token-embedding extraction.

Turns a list of names into per-name embedding groups through a text-encoder
adapter, composes each group down to a (first, second) embedding pair, and
stacks the pairs into two deduplicated embedding sets - one per name slot -
that the basis is later built from.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import AdapterError, CompositionError, DataFormatError

log = logging.getLogger(__name__)

FILTER_PROMPT_TEMPLATES = (
    "A photo of {name}",
    "{name} is playing the guitar",
    "{name} talks with Barack Obama",
)


@dataclass
class NameList:
    """Ordered, deduplicated names plus where they came from."""

    names: list[str]
    source_path: str

    def __len__(self) -> int:
        return len(self.names)


@dataclass
class EmbeddingGroup:
    """All token embeddings the encoder assigns to one name, in order."""

    name: str
    token_ids: list[int]
    embeddings: np.ndarray  # (k, d) float32

    def __post_init__(self):
        if len(self.token_ids) != len(self.embeddings):
            raise ValueError("token_ids and embeddings length mismatch")
        if len(self.token_ids) == 0:
            raise ValueError(f"empty embedding group for name {self.name!r}")


@dataclass
class EmbeddingPair:
    """The two embeddings that stand in for one name (or one identity)."""

    first: np.ndarray
    second: np.ndarray
    first_token_id: int | None = None
    second_token_id: int | None = None
    name: str | None = None


class Role(enum.Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass
class EmbeddingSet:
    """Stacked per-slot embeddings with their originating token ids.

    Invariant: no two rows share a source token id.
    """

    role: Role
    rows: np.ndarray  # (m', d) float32
    source_token_ids: list[int] = field(default_factory=list)

    def __post_init__(self):
        if len(self.source_token_ids) != len(self.rows):
            raise ValueError("source_token_ids and rows length mismatch")
        if len(set(self.source_token_ids)) != len(self.source_token_ids):
            raise ValueError("duplicate source token ids in embedding set")
        if not np.isfinite(self.rows).all():
            raise ValueError("non-finite rows in embedding set")

    @property
    def d(self) -> int:
        return self.rows.shape[1]

    def __len__(self) -> int:
        return len(self.rows)


def load_names(path) -> NameList:
    """Read a name-list file: UTF-8, one name per line, `#` comments and
    blank lines ignored. Whitespace is normalized and exact duplicates are
    dropped keeping first-occurrence order."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataFormatError(f"cannot read name list {p}: {exc}") from exc
    names: list[str] = []
    seen: set[str] = set()
    for line in text.splitlines():
        name = " ".join(line.split())
        if not name or name.startswith("#"):
            continue
        if name not in seen:
            seen.add(name)
            names.append(name)
    if not names:
        raise DataFormatError(f"empty result: no names in {p}")
    return NameList(names=names, source_path=str(p))


def embed_name(name: str, encoder) -> EmbeddingGroup:
    """Tokenize and embed a bare name (no sequence sentinels)."""
    if not name or not name.strip():
        raise ValueError("name must be nonempty")
    try:
        token_ids = encoder.tokenize(name)
    except Exception as exc:
        raise AdapterError(f"tokenizer failed on {name!r}: {exc}") from exc
    if not token_ids:
        raise DataFormatError(f"name {name!r} tokenizes to zero tokens")
    try:
        embeddings = encoder.dictionary_embed(token_ids)
    except Exception as exc:
        raise AdapterError(f"embedding lookup failed on {name!r}: {exc}") from exc
    return EmbeddingGroup(name=name, token_ids=list(token_ids), embeddings=np.asarray(embeddings))


def compose_to_pair(group: EmbeddingGroup) -> EmbeddingPair:
    """Reduce a group to its first two embeddings with distinct token ids.

    Raises CompositionError when fewer than two distinct token ids exist;
    callers drop such names (see pair_up)."""
    seen: set[int] = set()
    picked: list[int] = []
    for i, tid in enumerate(group.token_ids):
        if tid not in seen:
            seen.add(tid)
            picked.append(i)
        if len(picked) == 2:
            break
    if len(picked) < 2:
        raise CompositionError(
            f"name {group.name!r} has {len(picked)} distinct token(s), need at least 2"
        )
    i, j = picked
    return EmbeddingPair(
        first=group.embeddings[i],
        second=group.embeddings[j],
        first_token_id=group.token_ids[i],
        second_token_id=group.token_ids[j],
        name=group.name,
    )


def pair_up(names, encoder) -> list[EmbeddingPair]:
    """embed_name + compose_to_pair over a name list, dropping names that
    cannot be composed (single-token names) with a logged warning."""
    pairs = []
    for name in names:
        group = embed_name(name, encoder)
        try:
            pairs.append(compose_to_pair(group))
        except CompositionError as exc:
            log.warning("dropping name: %s", exc)
    return pairs


def build_sets(pairs: list[EmbeddingPair]) -> tuple[EmbeddingSet, EmbeddingSet]:
    """Stack pairs into FIRST and SECOND sets, removing rows whose token id
    was already seen in that slot. Input order is preserved."""
    if len(pairs) < 2:
        raise DataFormatError(f"need at least 2 pairs to build sets, got {len(pairs)}")
    sets = []
    for role in (Role.FIRST, Role.SECOND):
        rows, ids, seen = [], [], set()
        for pair in pairs:
            if role is Role.FIRST:
                tid, vec = pair.first_token_id, pair.first
            else:
                tid, vec = pair.second_token_id, pair.second
            if tid is None:
                raise ValueError("build_sets requires pairs carrying token ids")
            if tid in seen:
                continue
            seen.add(tid)
            ids.append(tid)
            rows.append(np.asarray(vec, dtype=np.float32))
        if len(rows) < 2:
            raise DataFormatError(
                f"fewer than 2 distinct rows survived dedup in the {role.value} set"
            )
        sets.append(EmbeddingSet(role=role, rows=np.stack(rows), source_token_ids=ids))
    first, second = sets
    if first.d != second.d:
        raise DataFormatError("first/second sets disagree on embedding dimension")
    return first, second


def filter_prompts(name: str) -> list[str]:
    """The three screening prompts used to judge whether a name generates
    consistent, composable identities. Braces in names are literal."""
    if not name or not name.strip():
        raise ValueError("name must be nonempty")
    return [t.replace("{name}", name) for t in FILTER_PROMPT_TEMPLATES]
