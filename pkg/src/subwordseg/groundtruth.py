"""Ground-truth records: parse/serialize per-word sub-word boxes.

The on-disk format is a small UTF-8 XML document per word:

    <word id="S0001">
      <subword idx="1"><a x="12" y="7"/><b x="58" y="40"/></subword>
      <subword idx="2"><a x="64" y="9"/><b x="101" y="44"/></subword>
      <letter name="Alif" shape="Isolated" code="0627"/>
    </word>

``a`` is the inclusive upper-left corner, ``b`` the inclusive bottom-right,
0-based pixels. Letter elements are optional and ignored by evaluation, as
are any unrecognized elements. A JSON mirror with the same field names is
accepted wherever XML is.
"""

import json
from dataclasses import dataclass
from xml.etree import ElementTree
from xml.sax.saxutils import quoteattr

from .components import Box


class SchemaError(ValueError):
    """Ground-truth document violates the schema."""


@dataclass(frozen=True)
class LetterLabel:
    name: str
    shape: str
    code: str


@dataclass(frozen=True)
class WordTruth:
    """One word's annotation: id plus ordered sub-word boxes."""

    id: str
    subwords: tuple
    letter_labels: tuple = ()

    def __post_init__(self):
        if not self.id:
            raise ValueError("word id must be non-empty")
        if not isinstance(self.subwords, tuple):
            object.__setattr__(self, "subwords", tuple(self.subwords))
        if not isinstance(self.letter_labels, tuple):
            object.__setattr__(self, "letter_labels", tuple(self.letter_labels))
        if not self.subwords:
            raise ValueError("a word must contain at least one sub-word")


def _subword_box(idx, ax, ay, bx, by):
    if ax > bx or ay > by:
        raise SchemaError(
            f"sub-word {idx}: corner a ({ax},{ay}) does not precede "
            f"corner b ({bx},{by})"
        )
    return Box(ax, ay, bx, by)


def _int_attr(elem, name, where):
    value = elem.get(name)
    if value is None:
        raise SchemaError(f"{where}: missing coordinate {elem.tag}.{name}")
    try:
        return int(value)
    except ValueError:
        raise SchemaError(
            f"{where}: coordinate {elem.tag}.{name} is not an integer: "
            f"{value!r}"
        ) from None


def _parse_xml(blob):
    try:
        root = ElementTree.fromstring(blob)
    except ElementTree.ParseError as e:
        raise SchemaError(f"not well-formed XML: {e}") from None
    if root.tag != "word":
        raise SchemaError(f"root element must be <word>, got <{root.tag}>")
    word_id = root.get("id")
    if not word_id:
        raise SchemaError("missing word id")
    boxes = []
    letters = []
    for elem in root:
        if elem.tag == "subword":
            where = f"sub-word {len(boxes) + 1}"
            a = elem.find("a")
            b = elem.find("b")
            if a is None or b is None:
                raise SchemaError(f"{where}: missing corner element")
            boxes.append(
                _subword_box(
                    len(boxes) + 1,
                    _int_attr(a, "x", where),
                    _int_attr(a, "y", where),
                    _int_attr(b, "x", where),
                    _int_attr(b, "y", where),
                )
            )
        elif elem.tag == "letter":
            letters.append(
                LetterLabel(
                    elem.get("name", ""),
                    elem.get("shape", ""),
                    elem.get("code", ""),
                )
            )
        # anything else (baseline, writer metadata, ...) is ignorable
    if not boxes:
        raise SchemaError(f"word {word_id!r} contains no sub-words")
    return WordTruth(word_id, tuple(boxes), tuple(letters))


def _corner(d, key, where):
    corner = d.get(key)
    if not isinstance(corner, dict):
        raise SchemaError(f"{where}: missing corner {key}")
    for axis in ("x", "y"):
        if not isinstance(corner.get(axis), int):
            raise SchemaError(f"{where}: missing coordinate {key}.{axis}")
    return corner["x"], corner["y"]


def _parse_json(blob):
    try:
        doc = json.loads(blob)
    except json.JSONDecodeError as e:
        raise SchemaError(f"not well-formed JSON: {e}") from None
    if not isinstance(doc, dict):
        raise SchemaError("top-level JSON value must be an object")
    word_id = doc.get("id")
    if not word_id or not isinstance(word_id, str):
        raise SchemaError("missing word id")
    raw_subwords = doc.get("subwords")
    if not isinstance(raw_subwords, list) or not raw_subwords:
        raise SchemaError(f"word {word_id!r} contains no sub-words")
    boxes = []
    for i, entry in enumerate(raw_subwords, start=1):
        where = f"sub-word {i}"
        if not isinstance(entry, dict):
            raise SchemaError(f"{where}: not an object")
        ax, ay = _corner(entry, "a", where)
        bx, by = _corner(entry, "b", where)
        boxes.append(_subword_box(i, ax, ay, bx, by))
    letters = tuple(
        LetterLabel(
            str(e.get("name", "")), str(e.get("shape", "")), str(e.get("code", ""))
        )
        for e in doc.get("letters", [])
    )
    return WordTruth(word_id, tuple(boxes), letters)


def parse_truth(blob):
    """Parse one ground-truth document (XML, or the JSON mirror)."""
    if isinstance(blob, str):
        blob = blob.encode("utf-8")
    if blob.startswith(b"\xef\xbb\xbf"):
        blob = blob[3:]
    head = blob.lstrip(b" \t\r\n")
    if head.startswith(b"{"):
        return _parse_json(blob)
    return _parse_xml(blob)


def write_truth(truth):
    """Serialize a WordTruth as XML bytes; parse_truth inverts exactly."""
    if not truth.subwords:
        raise ValueError("refusing to serialize a word with no sub-words")
    lines = [f"<word id={quoteattr(truth.id)}>"]
    for i, box in enumerate(truth.subwords, start=1):
        lines.append(
            f'  <subword idx="{i}">'
            f'<a x="{box.ax}" y="{box.ay}"/>'
            f'<b x="{box.bx}" y="{box.by}"/>'
            f"</subword>"
        )
    for letter in truth.letter_labels:
        lines.append(
            f"  <letter name={quoteattr(letter.name)} "
            f"shape={quoteattr(letter.shape)} "
            f"code={quoteattr(letter.code)}/>"
        )
    lines.append("</word>\n")
    return "\n".join(lines).encode("utf-8")


@dataclass(frozen=True)
class DatasetStats:
    """Sub-word count histogram over a corpus of words."""

    histogram: dict  # sub-word count -> number of words
    words: int
    subwords: int

    def record(self):
        return {
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "words": self.words,
            "subwords": self.subwords,
        }


def dataset_stats(truths):
    """Histogram words by their sub-word count, with corpus totals."""
    histogram = {}
    subwords = 0
    for t in truths:
        n = len(t.subwords)
        histogram[n] = histogram.get(n, 0) + 1
        subwords += n
    return DatasetStats(histogram, len(truths), subwords)
