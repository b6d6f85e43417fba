"""NR Cell Global Identity codec with the 2-bit gNB-type extension.

The 36-bit NR cell identity is split into a gNB ID field (top bits,
configurable 22..32 wide) and a cell ID field (remaining low bits).  At the
default 22-bit gNB ID width the top two bits of the gNB ID carry the gNB
type code, leaving a 20-bit gNB number and a 14-bit cell ID:

    bit 35 ........................ bit 0
    [type:2][gnb_id:20][cell_id:14]

The type extension is defined only for the 22-bit layout; other widths
decode with type ``RESERVED``.
"""

from dataclasses import dataclass
from enum import Enum

NCI_BITS = 36
TYPE_BITS = 2
GNB_ID_BITS_DEFAULT = 22
CELL_ID_BITS_DEFAULT = NCI_BITS - GNB_ID_BITS_DEFAULT  # 14
GNB_NUM_BITS = GNB_ID_BITS_DEFAULT - TYPE_BITS  # 20

_NCI_MAX = 1 << NCI_BITS
_PLMN_MAX = 1 << 24
_GNB_NUM_MAX = 1 << GNB_NUM_BITS
_CELL_ID_MAX = 1 << CELL_ID_BITS_DEFAULT


class RangeError(ValueError):
    """A field value does not fit its bit width."""


class NcgiParseError(ValueError):
    """Malformed textual NCGI; ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class GnbType(Enum):
    """Base-station tier carried in the top two bits of the gNB ID."""

    MACRO = 0b00
    SMALL_SUB6 = 0b01
    MMWAVE = 0b10
    RESERVED = 0b11

    @property
    def code(self) -> int:
        return self.value

    @property
    def code_bits(self) -> str:
        return format(self.value, "02b")

    @classmethod
    def from_code(cls, code: int) -> "GnbType":
        return cls(code & 0b11)


@dataclass(frozen=True)
class Ncgi:
    """Global cell identity: opaque 24-bit PLMN plus 36-bit NCI."""

    plmn: int
    nci: int
    gnb_id_bits: int = GNB_ID_BITS_DEFAULT

    def __post_init__(self):
        if not 0 <= self.plmn < _PLMN_MAX:
            raise RangeError(f"plmn {self.plmn:#x} outside 24-bit range")
        if not 0 <= self.nci < _NCI_MAX:
            raise RangeError(f"nci {self.nci:#x} outside 36-bit range")
        if not 22 <= self.gnb_id_bits <= 32:
            raise RangeError(f"gnb_id_bits {self.gnb_id_bits} outside [22, 32]")

    @property
    def gnb_type(self) -> GnbType:
        return gnb_type_of(self.nci)

    def __str__(self) -> str:
        return format_ncgi(self)


@dataclass(frozen=True)
class DecodedNci:
    """Field view of a 36-bit NCI at a given gNB ID width.

    At the 22-bit width ``gnb_id`` is the 20-bit number below the type code;
    at wider widths the whole gNB ID field lands in ``gnb_id`` and
    ``gnb_type`` is ``RESERVED`` (the extension is undefined there).
    """

    gnb_type: GnbType
    gnb_id: int
    cell_id: int
    gnb_id_bits: int = GNB_ID_BITS_DEFAULT

    def reencode(self) -> int:
        """Reassemble the original 36-bit value."""
        cell_bits = NCI_BITS - self.gnb_id_bits
        if self.gnb_id_bits == GNB_ID_BITS_DEFAULT:
            return (
                (self.gnb_type.code << (GNB_NUM_BITS + cell_bits))
                | (self.gnb_id << cell_bits)
                | self.cell_id
            )
        return (self.gnb_id << cell_bits) | self.cell_id


def encode_nci(gnb_type: GnbType, gnb_id: int, cell_id: int) -> int:
    """Pack type code, gNB number, and cell ID into a 36-bit NCI (22-bit layout)."""
    if not 0 <= gnb_id < _GNB_NUM_MAX:
        raise RangeError(f"gnb_id {gnb_id} outside 20-bit range")
    if not 0 <= cell_id < _CELL_ID_MAX:
        raise RangeError(f"cell_id {cell_id} outside 14-bit range")
    return (gnb_type.code << 34) | (gnb_id << 14) | cell_id


def decode_nci(raw: int, gnb_id_bits: int = GNB_ID_BITS_DEFAULT) -> DecodedNci:
    """Split a 36-bit NCI into its fields at the given gNB ID width."""
    if not 0 <= raw < _NCI_MAX:
        raise RangeError(f"nci {raw:#x} outside 36-bit range")
    if not 22 <= gnb_id_bits <= 32:
        raise RangeError(f"gnb_id_bits {gnb_id_bits} outside [22, 32]")
    cell_bits = NCI_BITS - gnb_id_bits
    cell_id = raw & ((1 << cell_bits) - 1)
    gnb_field = raw >> cell_bits
    if gnb_id_bits == GNB_ID_BITS_DEFAULT:
        return DecodedNci(
            gnb_type=GnbType.from_code(gnb_field >> GNB_NUM_BITS),
            gnb_id=gnb_field & (_GNB_NUM_MAX - 1),
            cell_id=cell_id,
            gnb_id_bits=gnb_id_bits,
        )
    return DecodedNci(GnbType.RESERVED, gnb_field, cell_id, gnb_id_bits)


def gnb_type_of(raw: int) -> GnbType:
    """Tier from bits [35:34] alone; total over all four codes."""
    if not 0 <= raw < _NCI_MAX:
        raise RangeError(f"nci {raw:#x} outside 36-bit range")
    return GnbType.from_code(raw >> 34)


def format_ncgi(ncgi: Ncgi) -> str:
    """Render the canonical text form ``PLMN:xxxxxx/TYPE:tt/GNB:d/CELL:d``.

    Only the 22-bit layout has a text form: the schema carries no width
    field, so other widths cannot round-trip.
    """
    if ncgi.gnb_id_bits != GNB_ID_BITS_DEFAULT:
        raise ValueError(
            f"textual NCGI is defined only for 22-bit gNB IDs, got {ncgi.gnb_id_bits}"
        )
    d = decode_nci(ncgi.nci)
    return (
        f"PLMN:{ncgi.plmn:06X}/TYPE:{d.gnb_type.code_bits}"
        f"/GNB:{d.gnb_id}/CELL:{d.cell_id}"
    )


def _expect(text: str, pos: int, literal: str) -> int:
    if not text.startswith(literal, pos):
        raise NcgiParseError(f"expected {literal!r}", pos)
    return pos + len(literal)


def _take_digits(text: str, pos: int, allowed: str, what: str) -> tuple[str, int]:
    end = pos
    while end < len(text) and text[end] in allowed:
        end += 1
    if end == pos:
        raise NcgiParseError(f"expected {what}", pos)
    return text[pos:end], end


def parse_ncgi(text: str) -> Ncgi:
    """Parse the canonical text form produced by :func:`format_ncgi`."""
    pos = _expect(text, 0, "PLMN:")
    if len(text) < pos + 6:
        raise NcgiParseError("expected 6 hex digits", pos)
    plmn_s = text[pos : pos + 6]
    for i, ch in enumerate(plmn_s):
        if ch not in "0123456789abcdefABCDEF":
            raise NcgiParseError("expected 6 hex digits", pos + i)
    pos += 6
    pos = _expect(text, pos, "/TYPE:")
    type_s = text[pos : pos + 2]
    if len(type_s) < 2 or any(c not in "01" for c in type_s):
        raise NcgiParseError("expected 2 binary digits", pos)
    if pos + 2 < len(text) and text[pos + 2] in "01":
        raise NcgiParseError("TYPE field must be exactly 2 binary digits", pos + 2)
    pos += 2
    pos = _expect(text, pos, "/GNB:")
    gnb_start = pos
    gnb_s, pos = _take_digits(text, pos, "0123456789", "decimal gNB ID")
    pos = _expect(text, pos, "/CELL:")
    cell_start = pos
    cell_s, pos = _take_digits(text, pos, "0123456789", "decimal cell ID")
    if pos != len(text):
        raise NcgiParseError("trailing characters", pos)
    gnb_id, cell_id = int(gnb_s), int(cell_s)
    if gnb_id >= _GNB_NUM_MAX:
        raise NcgiParseError("gNB ID outside 20-bit range", gnb_start)
    if cell_id >= _CELL_ID_MAX:
        raise NcgiParseError("cell ID outside 14-bit range", cell_start)
    raw = encode_nci(GnbType.from_code(int(type_s, 2)), gnb_id, cell_id)
    return Ncgi(plmn=int(plmn_s, 16), nci=raw)
