"""Bibliographic corpus: record parsing, author-name normalization, unit registry.

A corpus is an ordered list of documents plus a registry of graph units.
Units are authors (always, derived from the records) and terms (optional,
attached later by the term-extraction step). Unit ids are dense integers
assigned in a deterministic order: authors first, then terms, each group
sorted by canonical form. Re-parsing the same byte stream therefore always
reproduces the same ids.

Author names are reduced to a key of (surname, initials). The rules are a
reconstruction of the usual bibliographic heuristics: the surname is the
token before a comma when a comma is present, otherwise the last token;
diacritics are folded, case is uppercased, given names collapse to initial
letters. Hyphens inside surnames survive, other punctuation does not.
"""

from __future__ import annotations

import io
import json
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, TextIO

from .errors import (
    AssographError,
    DuplicateDocumentError,
    RecordParseError,
    UnknownDocumentError,
    UnknownUnitError,
)

AUTHOR = "author"
TERM = "term"

_INITIAL_RUN = re.compile(r"^(?:[A-Z]\.)+[A-Z]?\.?$")
_ALL_CAPS = re.compile(r"^[A-Z]{2,4}$")


def _fold(text: str) -> str:
    """Strip diacritics and uppercase."""
    nfkd = unicodedata.normalize("NFKD", text)
    return "".join(c for c in nfkd if not unicodedata.combining(c)).upper()


def _clean_surname(token: str) -> str:
    # keep letters and interior hyphens, drop everything else
    folded = _fold(token)
    kept = "".join(c for c in folded if c.isalpha() or c == "-")
    return kept.strip("-")


@dataclass(frozen=True)
class AuthorKey:
    """Normalized identity of a person name."""

    surname: str
    initials: tuple[str, ...]

    def render(self) -> str:
        """Canonical display form, e.g. ``CRAIEVICH, A. F.``."""
        if not self.initials:
            return self.surname
        return f"{self.surname}, " + " ".join(f"{i}." for i in self.initials)


def _given_initials(tokens: Sequence[str]) -> list[str]:
    """Collapse given-name tokens to initial letters.

    Dotted runs like ``A.F.`` and short runs written in capitals like
    ``MS`` expand to one initial per letter; any other token contributes
    its first letter.
    """
    initials: list[str] = []
    for token in tokens:
        folded = _fold(token)
        caps_run = token.isupper() and _ALL_CAPS.match(folded)
        if _INITIAL_RUN.match(folded) or caps_run:
            initials.extend(c for c in folded if c.isalpha())
        else:
            letters = [c for c in folded if c.isalpha()]
            if letters:
                initials.append(letters[0])
    return initials


def normalize_author(raw: str) -> AuthorKey:
    """Normalize a raw person name to an :class:`AuthorKey`.

    ``"Craievich, A. F."`` and ``"A. F. Craievich"`` yield the same key.
    Raises :class:`AssographError` on empty or letterless input.
    """
    text = raw.strip()
    if not text:
        raise AssographError("author name is empty")
    if "," in text:
        before, after = text.split(",", 1)
        pre = before.split()
        if not pre:
            raise AssographError(f"author name {raw!r} has no surname before the comma")
        surname = _clean_surname(pre[-1])
        # post-comma tokens are the given names; tokens left of the surname
        # (particles such as "van") keep their natural-order position last
        given = after.split() + pre[:-1]
    else:
        tokens = text.split()
        surname = _clean_surname(tokens[-1])
        given = tokens[:-1]
    if not surname:
        raise AssographError(f"author name {raw!r} has no usable surname")
    return AuthorKey(surname, tuple(_given_initials(given)))


@dataclass(frozen=True)
class Document:
    """One bibliographic record."""

    doc_id: str
    raw_authors: tuple[str, ...]
    title: str | None = None
    keywords: tuple[str, ...] | None = None
    abstract_text: str | None = None
    year: int | None = None
    source_tags: tuple[str, ...] | None = None


@dataclass(frozen=True)
class Unit:
    """A registered graph unit: a normalized author or a canonical term."""

    unit_id: int
    kind: str
    form: str
    tokens: tuple[str, ...] | None = None
    surfaces: tuple[str, ...] = ()


@dataclass(frozen=True)
class StatsReport:
    documents: int
    authors: int
    terms: int
    years: dict[int, int] = field(default_factory=dict)


@dataclass(frozen=True)
class Corpus:
    """Immutable parsed corpus with its unit registry.

    ``doc_author_units`` maps doc_id to the (sorted, deduplicated) author
    unit ids of the record. ``terms_per_doc`` and ``variants`` are empty
    until the term step attaches them; entries with no terms are dropped so
    an all-empty attachment equals a plain corpus.
    """

    documents: tuple[Document, ...]
    units: tuple[Unit, ...]
    doc_author_units: dict[str, tuple[int, ...]]
    terms_per_doc: dict[str, tuple[int, ...]] = field(default_factory=dict)
    variants: tuple = ()

    # -- registry access ---------------------------------------------------

    def unit(self, unit_id: int) -> Unit:
        if not 0 <= unit_id < len(self.units):
            raise UnknownUnitError(f"unknown unit id {unit_id}")
        return self.units[unit_id]

    def unit_id(self, kind: str, form: str) -> int:
        key = (kind, form)
        found = self._ids_by_key().get(key)
        if found is None:
            raise UnknownUnitError(f"no {kind} unit with form {form!r}")
        return found

    def _ids_by_key(self) -> dict[tuple[str, str], int]:
        cached = self.__dict__.get("_key_index")
        if cached is None:
            cached = {(u.kind, u.form): u.unit_id for u in self.units}
            self.__dict__["_key_index"] = cached
        return cached

    def document(self, doc_id: str) -> Document:
        idx = self._doc_index().get(doc_id)
        if idx is None:
            raise UnknownDocumentError(f"unknown document id {doc_id!r}")
        return self.documents[idx]

    def _doc_index(self) -> dict[str, int]:
        cached = self.__dict__.get("_docidx")
        if cached is None:
            cached = {d.doc_id: i for i, d in enumerate(self.documents)}
            self.__dict__["_docidx"] = cached
        return cached

    @property
    def author_units(self) -> tuple[Unit, ...]:
        return tuple(u for u in self.units if u.kind == AUTHOR)

    @property
    def term_units(self) -> tuple[Unit, ...]:
        return tuple(u for u in self.units if u.kind == TERM)

    def doc_units(self, doc_id: str) -> frozenset[int]:
        """Units a document contributes to a term-author hyper-edge:
        authors, the document's terms, and their directly linked variants."""
        authors = self.doc_author_units.get(doc_id)
        if authors is None:
            raise UnknownDocumentError(f"unknown document id {doc_id!r}")
        members = set(authors)
        terms = self.terms_per_doc.get(doc_id, ())
        members.update(terms)
        if terms and self.variants:
            adjacency = self._variant_adjacency()
            for t in terms:
                members.update(adjacency.get(t, ()))
        return frozenset(members)

    def _variant_adjacency(self) -> dict[int, tuple[int, ...]]:
        cached = self.__dict__.get("_variant_adj")
        if cached is None:
            adj: dict[int, list[int]] = {}
            for link in self.variants:
                adj.setdefault(link.u, []).append(link.v)
                adj.setdefault(link.v, []).append(link.u)
            cached = {k: tuple(sorted(v)) for k, v in adj.items()}
            self.__dict__["_variant_adj"] = cached
        return cached


_RECORD_FIELDS = {"id", "title", "authors", "keywords", "abstract", "year", "tags"}


def _parse_record(line: str, lineno: int) -> Document:
    try:
        raw = json.loads(line)
    except json.JSONDecodeError as exc:
        raise RecordParseError(f"invalid JSON ({exc.msg})", line=lineno) from exc
    if not isinstance(raw, dict):
        raise RecordParseError("record is not an object", line=lineno)
    unknown = set(raw) - _RECORD_FIELDS
    if unknown:
        raise RecordParseError(
            f"unknown field(s) {sorted(unknown)}", line=lineno, field=sorted(unknown)[0]
        )

    def want(name, types, required=False):
        value = raw.get(name)
        if value is None:
            if required:
                raise RecordParseError("field is required", line=lineno, field=name)
            return None
        if not isinstance(value, types):
            raise RecordParseError(
                f"expected {types[0].__name__ if isinstance(types, tuple) else types.__name__}",
                line=lineno,
                field=name,
            )
        return value

    doc_id = want("id", str, required=True)
    if not doc_id.strip():
        raise RecordParseError("field is empty", line=lineno, field="id")
    authors = want("authors", list, required=True)
    for a in authors:
        if not isinstance(a, str):
            raise RecordParseError("authors must be strings", line=lineno, field="authors")
    title = want("title", str)
    keywords = want("keywords", list)
    if keywords is not None and any(not isinstance(k, str) for k in keywords):
        raise RecordParseError("keywords must be strings", line=lineno, field="keywords")
    abstract = want("abstract", str)
    year = want("year", int)
    if isinstance(year, bool):
        raise RecordParseError("expected int", line=lineno, field="year")
    tags = want("tags", list)
    if tags is not None and any(not isinstance(t, str) for t in tags):
        raise RecordParseError("tags must be strings", line=lineno, field="tags")

    return Document(
        doc_id=doc_id,
        raw_authors=tuple(authors),
        title=title,
        keywords=None if keywords is None else tuple(keywords),
        abstract_text=abstract,
        year=year,
        source_tags=None if tags is None else tuple(tags),
    )


def _iter_lines(stream: str | TextIO | Iterable[str]) -> Iterator[str]:
    if isinstance(stream, str):
        yield from io.StringIO(stream)
    else:
        yield from stream


def parse_corpus(stream: str | TextIO | Iterable[str]) -> Corpus:
    """Parse line-delimited JSON records into a :class:`Corpus`.

    Each non-blank line is one record with fields ``id`` (required),
    ``authors`` (required, may be empty), ``title``, ``keywords``,
    ``abstract``, ``year``, ``tags``. Blank lines are skipped. Malformed
    lines and duplicate ids raise with the offending line number.
    """
    documents: list[Document] = []
    seen: set[str] = set()
    forms: set[str] = set()
    doc_keys: dict[str, list[str]] = {}
    for lineno, line in enumerate(_iter_lines(stream), start=1):
        if not line.strip():
            continue
        doc = _parse_record(line, lineno)
        if doc.doc_id in seen:
            raise DuplicateDocumentError(doc.doc_id, line=lineno)
        seen.add(doc.doc_id)
        try:
            rendered = [normalize_author(raw).render() for raw in doc.raw_authors]
        except AssographError as exc:
            raise RecordParseError(str(exc), line=lineno, field="authors") from exc
        forms.update(rendered)
        doc_keys[doc.doc_id] = rendered
        documents.append(doc)

    units = tuple(
        Unit(unit_id=i, kind=AUTHOR, form=form)
        for i, form in enumerate(sorted(forms))
    )
    by_form = {u.form: u.unit_id for u in units}
    doc_author_units = {
        doc_id: tuple(sorted({by_form[f] for f in forms}))
        for doc_id, forms in doc_keys.items()
    }
    return Corpus(documents=tuple(documents), units=units, doc_author_units=doc_author_units)


def register_terms(corpus: Corpus, terms_per_doc: Mapping[str, Iterable]) -> Corpus:
    """Register extracted terms and return the enriched corpus.

    ``terms_per_doc`` maps doc_id to :class:`~assograph.termvar.Term` values
    (token identity). Term unit ids continue after the author ids, assigned
    in canonical-form order; surface forms are merged corpus-wide.
    """
    known = set(corpus.doc_author_units)
    for doc_id in terms_per_doc:
        if doc_id not in known:
            raise UnknownDocumentError(f"unknown document id {doc_id!r}")
    if corpus.term_units:
        raise AssographError("corpus already carries terms")

    catalog: dict[tuple[str, ...], set[str]] = {}
    for terms in terms_per_doc.values():
        for term in terms:
            catalog.setdefault(term.tokens, set()).update(term.surfaces)

    base = len(corpus.units)
    ordered = sorted(catalog, key=lambda tokens: " ".join(tokens))
    term_units = tuple(
        Unit(
            unit_id=base + i,
            kind=TERM,
            form=" ".join(tokens),
            tokens=tokens,
            surfaces=tuple(sorted(catalog[tokens])),
        )
        for i, tokens in enumerate(ordered)
    )
    id_of = {u.tokens: u.unit_id for u in term_units}
    per_doc = {
        doc_id: tuple(sorted({id_of[t.tokens] for t in terms}))
        for doc_id, terms in terms_per_doc.items()
        if terms
    }
    return Corpus(
        documents=corpus.documents,
        units=corpus.units + term_units,
        doc_author_units=corpus.doc_author_units,
        terms_per_doc=per_doc,
        variants=corpus.variants,
    )


def with_variants(corpus: Corpus, links: Iterable) -> Corpus:
    """Return a corpus carrying the given term variant links."""
    ordered = tuple(sorted(set(links), key=lambda l: (l.u, l.v)))
    term_ids = {u.unit_id for u in corpus.term_units}
    pairs = set()
    for link in ordered:
        if link.u not in term_ids or link.v not in term_ids:
            raise UnknownUnitError(f"variant link {link.u}-{link.v} references a non-term unit")
        if (link.u, link.v) in pairs:
            raise AssographError(f"duplicate variant links for pair {link.u}-{link.v}")
        pairs.add((link.u, link.v))
    return Corpus(
        documents=corpus.documents,
        units=corpus.units,
        doc_author_units=corpus.doc_author_units,
        terms_per_doc=corpus.terms_per_doc,
        variants=ordered,
    )


def corpus_stats(corpus: Corpus) -> StatsReport:
    """Document, author and term counts plus the publication-year histogram."""
    years = Counter(d.year for d in corpus.documents if d.year is not None)
    return StatsReport(
        documents=len(corpus.documents),
        authors=len(corpus.author_units),
        terms=len(corpus.term_units),
        years=dict(sorted(years.items())),
    )
