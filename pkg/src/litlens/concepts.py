"""Noun-phrase extraction and hierarchical concept trees.

Phrases are stopword-bounded token runs (rule-based chunking, no model
dependency): every contiguous sub-run of 1..max_len non-stopword,
non-numeric tokens is a candidate, counted by the number of distinct text
units containing it. Trees nest phrases under their highest-frequency proper
sub-phrase, so "mean incubation period" hangs below "incubation period".
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

from .corpus import CitationContext, Corpus

_TOKEN_RE = re.compile(r"[a-z0-9][a-z0-9'\-]*")
_NUMERIC_RE = re.compile(r"[\d.,:%\-]+")

DEFAULT_MAX_PHRASE_LEN = 4
DEFAULT_MIN_TREE_FREQ = 2


def load_default_stopwords() -> list[str]:
    text = resources.files("litlens.data").joinpath("stopwords.txt").read_text("utf-8")
    return parse_stopwords(text)


def parse_stopwords(text: str) -> list[str]:
    words = []
    for line in text.splitlines():
        word = line.strip().lower()
        if word and not word.startswith("#"):
            words.append(word)
    return words


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


def tokenize_with_offsets(text: str) -> list[tuple[str, int, int]]:
    return [(m.group(0), m.start(), m.end())
            for m in _TOKEN_RE.finditer(text.lower())]


def _is_numeric(token: str) -> bool:
    return _NUMERIC_RE.fullmatch(token) is not None


def content_runs(text: str, stopwords: set[str]) -> list[list[str]]:
    """Maximal runs of non-stopword, non-numeric tokens."""
    runs: list[list[str]] = []
    current: list[str] = []
    for token in tokenize(text):
        if token in stopwords or _is_numeric(token):
            if current:
                runs.append(current)
                current = []
        else:
            current.append(token)
    if current:
        runs.append(current)
    return runs


@dataclass
class NounPhrase:
    text: str
    frequency: int

    @property
    def tokens(self) -> tuple[str, ...]:
        return tuple(self.text.split())


def phrases_in_text(text: str, stopwords: set[str],
                    max_len: int = DEFAULT_MAX_PHRASE_LEN) -> set[str]:
    """All candidate phrases of one text unit."""
    out: set[str] = set()
    for run in content_runs(text, stopwords):
        for length in range(1, max_len + 1):
            for i in range(len(run) - length + 1):
                out.add(" ".join(run[i:i + length]))
    return out


def extract_phrases_from_texts(texts: list[str], stopwords: set[str],
                               max_len: int = DEFAULT_MAX_PHRASE_LEN) -> list[NounPhrase]:
    """Ranked phrases over arbitrary text units (frequency = #units containing)."""
    counts: dict[str, int] = {}
    for text in texts:
        for phrase in phrases_in_text(text, stopwords, max_len):
            counts[phrase] = counts.get(phrase, 0) + 1
    ranked = sorted(counts.items(),
                    key=lambda kv: (-kv[1], -len(kv[0].split()), kv[0]))
    return [NounPhrase(text, freq) for text, freq in ranked]


def extract_phrases(contexts: list[CitationContext], stopwords: set[str],
                    max_len: int = DEFAULT_MAX_PHRASE_LEN) -> list[NounPhrase]:
    """Ranked noun phrases over citation contexts."""
    return extract_phrases_from_texts([c.text for c in contexts], stopwords, max_len)


@dataclass
class ConceptNode:
    phrase: str
    frequency: int
    children: list["ConceptNode"] = field(default_factory=list)

    def to_doc(self) -> dict:
        return {"phrase": self.phrase, "frequency": self.frequency,
                "children": [c.to_doc() for c in self.children]}

    @classmethod
    def from_doc(cls, doc: dict) -> "ConceptNode":
        return cls(doc["phrase"], doc["frequency"],
                   [cls.from_doc(c) for c in doc["children"]])


@dataclass
class ConceptTree:
    scope: str
    root: ConceptNode | None = None

    def node_count(self) -> int:
        def count(node: ConceptNode) -> int:
            return 1 + sum(count(c) for c in node.children)
        return count(self.root) if self.root else 0

    def to_doc(self) -> dict:
        return {"scope": self.scope,
                "root": self.root.to_doc() if self.root else None}

    @classmethod
    def from_doc(cls, doc: dict) -> "ConceptTree":
        root = ConceptNode.from_doc(doc["root"]) if doc.get("root") else None
        return cls(doc["scope"], root)


def _is_proper_subphrase(short: tuple[str, ...], long: tuple[str, ...]) -> bool:
    """True when `short` is a contiguous proper subsequence of `long`."""
    n, m = len(short), len(long)
    if n >= m:
        return False
    return any(long[i:i + n] == short for i in range(m - n + 1))


def build_concept_tree(phrases: list[NounPhrase], scope: str,
                       min_freq: int = DEFAULT_MIN_TREE_FREQ,
                       seed: str | None = None) -> ConceptTree:
    """Nest ranked phrases by sub-phrase containment.

    The root is the top-ranked phrase (or the seed for seed scopes, exempt
    from the frequency floor); every other phrase attaches to its
    highest-frequency proper sub-phrase already in the tree, falling back to
    the root. Children keep frequency-descending order.
    """
    if seed is not None:
        seed_text = " ".join(tokenize(seed))
        freq = next((p.frequency for p in phrases if p.text == seed_text), 0)
        root = ConceptNode(seed_text, freq)
        remaining = [p for p in phrases if p.text != seed_text]
    else:
        if not phrases:
            return ConceptTree(scope)
        root = ConceptNode(phrases[0].text, phrases[0].frequency)
        remaining = phrases[1:]

    nodes: list[ConceptNode] = [root]
    for phrase in remaining:
        if phrase.frequency < min_freq:
            continue
        tokens = phrase.tokens
        parent = root
        best_freq = -1
        for node in nodes:
            if _is_proper_subphrase(tuple(node.phrase.split()), tokens):
                if node.frequency > best_freq:
                    parent = node
                    best_freq = node.frequency
        child = ConceptNode(phrase.text, phrase.frequency)
        parent.children.append(child)
        nodes.append(child)
    return ConceptTree(scope, root)


def contains_phrase(text: str, phrase_tokens: tuple[str, ...]) -> bool:
    """Token-boundary containment of the phrase in the text."""
    tokens = tuple(tokenize(text))
    n = len(phrase_tokens)
    if n == 0 or n > len(tokens):
        return False
    return any(tokens[i:i + n] == phrase_tokens for i in range(len(tokens) - n + 1))


def resolve_scope(corpus: Corpus, *, cluster_members: set[str] | None = None,
                  ref: str | None = None, seed: str | None = None) -> list[CitationContext]:
    """Contexts belonging to a cluster, reference, or seed-phrase scope."""
    given = sum(x is not None for x in (cluster_members, ref, seed))
    if given != 1:
        raise ValueError("exactly one of cluster_members, ref, seed must be given")
    if cluster_members is not None:
        return [c for c in corpus.contexts if c.cited_id in cluster_members]
    if ref is not None:
        return [c for c in corpus.contexts if c.cited_id == ref]
    seed_tokens = tuple(tokenize(seed or ""))
    return [c for c in corpus.contexts if contains_phrase(c.text, seed_tokens)]


def contexts_for_concept(phrase: str, scope_contexts: list[CitationContext],
                         corpus: Corpus) -> list[CitationContext]:
    """In-scope contexts containing the phrase, ordered by citing record date."""
    tokens = tuple(tokenize(phrase))
    hits = [c for c in scope_contexts if contains_phrase(c.text, tokens)]

    def sort_key(c: CitationContext):
        rec = corpus.records.get(c.citing_id)
        date = rec.date_key() if rec else (9999, 12)
        return (date, c.citing_id, c.cited_id, c.ordinal)

    return sorted(hits, key=sort_key)


def format_tree(tree: ConceptTree, indent: str = "  ") -> str:
    """Indented text rendering with frequencies, for the CLI."""
    if tree.root is None:
        return "(empty tree)"
    lines: list[str] = []

    def walk(node: ConceptNode, depth: int) -> None:
        lines.append(f"{indent * depth}{node.phrase} ({node.frequency})")
        for child in node.children:
            walk(child, depth + 1)

    walk(tree.root, 0)
    return "\n".join(lines)
