"""Term extraction and term-variation links.

Two extractors are built in: ``keywords`` turns each keyword string into one
term, ``naive_np`` segments an abstract into maximal runs of non-stopword
alphabetic tokens (1 to 6 tokens long). Variation then relates terms
corpus-wide: spelling (hyphen/diacritic folding), morphological (a tiny
suffix table), synonym (one-token substitution from a user lexicon) and
expansion (a shorter term that is a head-sharing suffix of a longer one).
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .corpus import Corpus, Document, Unit
from .errors import AssographError

KEYWORDS = "keywords"
NAIVE_NP = "naive_np"

SPELLING = "spelling"
MORPHOLOGICAL = "morphological"
SYNONYM = "synonym"
EXPANSION = "expansion"

# priority order when several rules match the same pair
_KIND_PRIORITY = (SPELLING, MORPHOLOGICAL, SYNONYM, EXPANSION)

MAX_RUN = 6

# small built-in stopword list for the naive_np extractor; callers with
# real corpora are expected to pass their own
DEFAULT_STOPWORDS = frozenset(
    """a an and are as at be but by for from has have in is it its of on or
    that the their this to was we were which with""".split()
)

_WORD = re.compile(r"[a-z]+(?:-[a-z]+)*")


@dataclass(frozen=True)
class Term:
    """A term identified by its token list; surfaces do not affect identity."""

    tokens: tuple[str, ...]
    surfaces: frozenset[str] = field(default_factory=frozenset, compare=False)

    def __post_init__(self):
        if not self.tokens:
            raise AssographError("term has no tokens")


@dataclass(frozen=True)
class VariantLink:
    """Undirected variation link between two term units (u < v)."""

    u: int
    v: int
    kind: str

    def __post_init__(self):
        if self.u == self.v:
            raise AssographError("variant link endpoints must differ")
        if self.u > self.v:
            raise AssographError("variant link endpoints must be ordered u < v")


def link(u: int, v: int, kind: str) -> VariantLink:
    return VariantLink(min(u, v), max(u, v), kind)


def _tokenize(text: str) -> list[str]:
    """Lowercased word tokens, keeping interior hyphens."""
    return _WORD.findall(text.lower())


def extract_terms(
    doc: Document,
    mode: str = KEYWORDS,
    stopwords: frozenset[str] | None = None,
) -> set[Term]:
    """Extract the term set of one document.

    ``keywords`` mode needs the record's keywords field and yields one term
    per keyword string. ``naive_np`` mode needs the abstract and yields each
    maximal run of consecutive non-stopword alphabetic tokens whose length
    is 1..6; longer runs are skipped, punctuation and digits break runs.
    """
    if mode == KEYWORDS:
        if doc.keywords is None:
            raise AssographError(f"document {doc.doc_id!r}: keywords mode needs a keywords field")
        terms = set()
        for keyword in doc.keywords:
            tokens = tuple(_tokenize(keyword))
            if tokens:
                terms.add(Term(tokens, frozenset({keyword})))
        return terms

    if mode == NAIVE_NP:
        if doc.abstract_text is None:
            raise AssographError(f"document {doc.doc_id!r}: naive_np mode needs an abstract")
        stop = DEFAULT_STOPWORDS if stopwords is None else stopwords
        terms = set()
        # split at anything that is not a word character, space or hyphen so
        # punctuation breaks runs, then break further at stopwords
        for segment in re.split(r"[^A-Za-z\s-]+", doc.abstract_text):
            run: list[str] = []
            for token in _tokenize(segment) + [""]:
                if token and token not in stop:
                    run.append(token)
                    continue
                if run and len(run) <= MAX_RUN:
                    surface = " ".join(run)
                    terms.add(Term(tuple(run), frozenset({surface})))
                run = []
        return terms

    raise AssographError(f"unknown extraction mode {mode!r}")


def extract_corpus_terms(
    corpus: Corpus,
    mode: str = KEYWORDS,
    stopwords: frozenset[str] | None = None,
) -> dict[str, set[Term]]:
    """Run :func:`extract_terms` over every document of a corpus."""
    return {d.doc_id: extract_terms(d, mode, stopwords) for d in corpus.documents}


# -- variation rules -------------------------------------------------------


def _fold_tokens(tokens: Sequence[str]) -> tuple[str, ...]:
    """Spelling normalization: split at hyphens, strip diacritics."""
    out: list[str] = []
    for token in tokens:
        for part in token.split("-"):
            if not part:
                continue
            nfkd = unicodedata.normalize("NFKD", part)
            out.append("".join(c for c in nfkd if not unicodedata.combining(c)))
    return tuple(out)


def _stem(token: str) -> str:
    if token.endswith("ies") and len(token) > 3:
        return token[:-3] + "y"
    if token.endswith("es") and len(token) > 2:
        return token[:-2]
    if token.endswith("s") and len(token) > 1:
        return token[:-1]
    return token


def _stem_tokens(tokens: Sequence[str]) -> tuple[str, ...]:
    return tuple(_stem(t) for t in tokens)


def find_variants(
    terms: Iterable[Unit],
    synonyms: Iterable[tuple[str, str]] = (),
) -> list[VariantLink]:
    """Detect variation links among registered term units.

    ``synonyms`` is a lexicon of interchangeable token pairs. Each unordered
    term pair gets at most one link; when several rules match, the highest
    priority kind wins (spelling, then morphological, synonym, expansion).
    Output is sorted by (u, v).
    """
    units = sorted(terms, key=lambda u: u.unit_id)
    for u in units:
        if u.tokens is None:
            raise AssographError(f"unit {u.unit_id} is not a registered term")

    lexicon: dict[str, set[str]] = {}
    for a, b in synonyms:
        a, b = a.lower(), b.lower()
        if a == b:
            continue
        lexicon.setdefault(a, set()).add(b)
        lexicon.setdefault(b, set()).add(a)

    found: dict[tuple[int, int], str] = {}

    def propose(a: int, b: int, kind: str):
        if a == b:
            return
        pair = (min(a, b), max(a, b))
        current = found.get(pair)
        if current is None or _KIND_PRIORITY.index(kind) < _KIND_PRIORITY.index(current):
            found[pair] = kind

    # spelling: identical after hyphen/diacritic folding
    by_fold: dict[tuple[str, ...], list[int]] = {}
    for u in units:
        by_fold.setdefault(_fold_tokens(u.tokens), []).append(u.unit_id)
    for bucket in by_fold.values():
        for i, a in enumerate(bucket):
            for b in bucket[i + 1:]:
                propose(a, b, SPELLING)

    # morphological: identical after per-token suffix stripping
    by_stem: dict[tuple[str, ...], list[int]] = {}
    for u in units:
        by_stem.setdefault(_stem_tokens(u.tokens), []).append(u.unit_id)
    for bucket in by_stem.values():
        for i, a in enumerate(bucket):
            for b in bucket[i + 1:]:
                propose(a, b, MORPHOLOGICAL)

    # synonym: equal token lists after substituting exactly one token
    if lexicon:
        by_tokens = {u.tokens: u.unit_id for u in units}
        for u in units:
            for pos, token in enumerate(u.tokens):
                for replacement in lexicon.get(token, ()):
                    candidate = u.tokens[:pos] + (replacement,) + u.tokens[pos + 1:]
                    other = by_tokens.get(candidate)
                    if other is not None:
                        propose(u.unit_id, other, SYNONYM)

    # expansion: the shorter term is a suffix of the longer (shared head)
    by_head: dict[str, list[Unit]] = {}
    for u in units:
        by_head.setdefault(u.tokens[-1], []).append(u)
    for bucket in by_head.values():
        for i, a in enumerate(bucket):
            for b in bucket[i + 1:]:
                short, long_ = (a, b) if len(a.tokens) <= len(b.tokens) else (b, a)
                if len(short.tokens) < len(long_.tokens) and \
                        long_.tokens[-len(short.tokens):] == short.tokens:
                    propose(a.unit_id, b.unit_id, EXPANSION)

    return [VariantLink(u, v, kind) for (u, v), kind in sorted(found.items())]


def load_synonym_lexicon(text: str) -> list[tuple[str, str]]:
    """Parse a synonym lexicon: one tab-separated pair per line."""
    pairs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise AssographError(f"synonym lexicon line {lineno}: expected two tab-separated tokens")
        pairs.append((parts[0].strip(), parts[1].strip()))
    return pairs
