"""Linguistic uncertainty scoring of citation contexts.

Three cue-lexicon kinds are scored: epistemic (E), hedging (H), and
transitional (T). Each cue carries a global document frequency p; a matched
cue contributes the information weight h(p) = p * log2(1/p) and a context's
kind score is the maximum over its distinct matched cues. Matching is
token-boundary-aware with a small suffix tolerance so that e.g. "uncertain"
also hits "uncertainty" and "conclude" hits "concluded".

Aggregation is additive: a reference's score sums its contexts, an article's
sums its contexts, a cluster's sums its member references.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources

from .concepts import tokenize_with_offsets
from .corpus import CitationContext, Corpus

KINDS = ("E", "H", "T")
RHETORICAL_KIND = "R"

# p must stay below 1/e: there h(p) is strictly monotone, so commoner cues
# always outweigh rarer ones and the max rule is order-consistent.
MAX_CUE_P = 1.0 / math.e


class LexiconError(ValueError):
    pass


def info_weight(p: float) -> float:
    """Information weight h(p) = p * log2(1/p) of one cue occurrence."""
    return p * math.log2(1.0 / p)


def _suffix_variants(token: str) -> set[str]:
    out = {token, token + "s", token + "es", token + "ed",
           token + "ing", token + "ty", token + "ties"}
    if token.endswith("e"):
        out.add(token + "d")
        out.add(token[:-1] + "ing")
    if token.endswith("y"):
        out.add(token[:-1] + "ies")
        out.add(token[:-1] + "ied")
    return out


@dataclass
class CueLexicon:
    kind: str
    entries: dict[str, float]

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise LexiconError(f"unknown cue kind {self.kind!r}")
        normalized = {}
        for cue, p in self.entries.items():
            cue = " ".join(cue.lower().split())
            if not cue:
                raise LexiconError("empty cue")
            if not 0.0 < p <= MAX_CUE_P:
                raise LexiconError(
                    f"cue {cue!r}: p={p} outside (0, 1/e]; h(p) must stay monotone")
            normalized[cue] = p
        self.entries = normalized

    def restrict(self, cues: list[str] | None) -> "CueLexicon":
        """Lexicon limited to the named cues (unknown names ignored)."""
        if cues is None:
            return self
        wanted = {" ".join(c.lower().split()) for c in cues}
        return CueLexicon(self.kind, {c: p for c, p in self.entries.items() if c in wanted})


@dataclass
class Span:
    kind: str
    start: int
    end: int
    cue: str

    def to_doc(self) -> dict:
        return {"kind": self.kind, "start": self.start, "end": self.end, "cue": self.cue}


@dataclass
class UncertaintyScore:
    e: float = 0.0
    h: float = 0.0
    t: float = 0.0
    spans: list[Span] = field(default_factory=list)

    def by_kind(self, kind: str) -> float:
        return {"E": self.e, "H": self.h, "T": self.t}[kind]

    def as_dict(self) -> dict[str, float]:
        return {"E": self.e, "H": self.h, "T": self.t}


def match_cues(text: str, cues: dict[str, float], kind: str) -> list[tuple[str, Span]]:
    """All cue matches with character spans; spans never overlap.

    Scans tokens left to right; at each position the longest matching cue
    wins and the scan resumes after it. Multi-word cues match token
    sequences; only the final token tolerates suffixes.
    """
    tokens = tokenize_with_offsets(text)
    cue_tokens = {cue: tuple(cue.split()) for cue in cues}
    by_length = sorted(cues, key=lambda c: (-len(cue_tokens[c]), c))
    matches: list[tuple[str, Span]] = []
    i = 0
    while i < len(tokens):
        hit = None
        for cue in by_length:
            parts = cue_tokens[cue]
            if i + len(parts) > len(tokens):
                continue
            head_ok = all(tokens[i + j][0] == parts[j] for j in range(len(parts) - 1))
            last = tokens[i + len(parts) - 1][0]
            if head_ok and last in _suffix_variants(parts[-1]):
                hit = (cue, len(parts))
                break
        if hit is None:
            i += 1
            continue
        cue, width = hit
        start = tokens[i][1]
        end = tokens[i + width - 1][2]
        matches.append((cue, Span(kind, start, end, cue)))
        i += width
    return matches


def score_context(text: str, lexicons: dict[str, CueLexicon]) -> UncertaintyScore:
    """Score one passage: per kind, the max info weight over matched cues."""
    score = UncertaintyScore()
    for kind in KINDS:
        lex = lexicons.get(kind)
        if lex is None or not lex.entries:
            continue
        matched = match_cues(text, lex.entries, kind)
        if not matched:
            continue
        value = max(info_weight(lex.entries[cue]) for cue, _ in matched)
        if kind == "E":
            score.e = value
        elif kind == "H":
            score.h = value
        else:
            score.t = value
        score.spans.extend(span for _, span in matched)
    return score


def aggregate(scores: list[UncertaintyScore]) -> dict[str, float]:
    """Sum of scores per kind; the same rule serves references, articles and clusters."""
    return {
        "E": sum(s.e for s in scores),
        "H": sum(s.h for s in scores),
        "T": sum(s.t for s in scores),
    }


def aggregate_values(values: list[dict[str, float]]) -> dict[str, float]:
    return {k: sum(v.get(k, 0.0) for v in values) for k in KINDS}


@dataclass
class FilterRow:
    citing_id: str
    cited_id: str
    ordinal: int
    score: float
    text: str
    cue_spans: list[Span]
    rhetorical_spans: list[Span]


def filter_contexts(corpus: Corpus, kind: str, rhetorical_terms: list[str],
                    lexicons: dict[str, CueLexicon],
                    cues: list[str] | None = None) -> list[FilterRow]:
    """Rank contexts matching >=1 cue of `kind` and, when given, >=1 rhetorical term.

    Rows sort by score descending, then citing id, cited id, ordinal. Cue and
    rhetorical spans are tagged separately so the explorer can style them
    differently.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown cue kind {kind!r}")
    lex = lexicons.get(kind, CueLexicon(kind, {})).restrict(cues)
    if not lex.entries:
        return []
    rhet = {" ".join(t.lower().split()): 1.0 for t in rhetorical_terms if t.strip()}
    rows: list[FilterRow] = []
    for ctx in corpus.contexts:
        cue_matches = match_cues(ctx.text, lex.entries, kind)
        if not cue_matches:
            continue
        rhet_spans: list[Span] = []
        if rhet:
            rhet_matches = match_cues(ctx.text, rhet, RHETORICAL_KIND)
            if not rhet_matches:
                continue
            rhet_spans = [span for _, span in rhet_matches]
        score = max(info_weight(lex.entries[cue]) for cue, _ in cue_matches)
        rows.append(FilterRow(ctx.citing_id, ctx.cited_id, ctx.ordinal, score,
                              ctx.text, [s for _, s in cue_matches], rhet_spans))
    rows.sort(key=lambda r: (-r.score, r.citing_id, r.cited_id, r.ordinal))
    return rows


def parse_lexicons(text: str) -> dict[str, CueLexicon]:
    """Parse the lexicon file: one `kind<TAB>cue<TAB>p` entry per line.

    Blank lines and lines starting with # are skipped. Raises LexiconError
    with the offending line number on any bad entry.
    """
    entries: dict[str, dict[str, float]] = {k: {} for k in KINDS}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise LexiconError(f"line {lineno}: expected kind<TAB>cue<TAB>p")
        kind, cue, p_text = (p.strip() for p in parts)
        if kind not in KINDS:
            raise LexiconError(f"line {lineno}: unknown kind {kind!r}")
        try:
            p = float(p_text)
        except ValueError:
            raise LexiconError(f"line {lineno}: bad frequency {p_text!r}") from None
        if not 0.0 < p <= MAX_CUE_P:
            raise LexiconError(f"line {lineno}: p={p} outside (0, 1/e]")
        entries[kind][cue.lower()] = p
    return {k: CueLexicon(k, v) for k, v in entries.items()}


def load_lexicons(path: str | None = None) -> dict[str, CueLexicon]:
    """Load lexicons from a file, or the packaged defaults when path is None."""
    if path is None:
        text = resources.files("litlens.data").joinpath("cues.tsv").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_lexicons(text)


def lexicons_to_doc(lexicons: dict[str, CueLexicon]) -> dict[str, dict[str, float]]:
    return {k: dict(sorted(lex.entries.items())) for k, lex in lexicons.items()}


def lexicons_from_doc(doc: dict[str, dict[str, float]]) -> dict[str, CueLexicon]:
    return {k: CueLexicon(k, dict(entries)) for k, entries in doc.items()}
