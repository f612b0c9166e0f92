"""CSV dump/parse for coefficient data.

Two dump modes share one layout across q-expansions and Dirichlet
series: embedded mode has header `n,coeff_real,coeff_imag`; exact mode
has header `n,cyclo_order,c0,c1,...` with one rational string per power
basis coordinate.  Q-expansion metadata rides in a leading comment so
the exact dump round-trips to an identical object.

Input blocks for the command line are `n,value` (exact rational) or
`n,value_re,value_im` (exact Gaussian rational) with a header row.
"""

from __future__ import annotations

import csv
from fractions import Fraction

from .chars import DirichletCharacter
from .cyclo import CycloNumber, as_cyclo
from .qseries import QExpansion

EXACT_HEADER = ["n", "cyclo_order", "c0", "c1", "..."]
EMBED_HEADER = ["n", "coeff_real", "coeff_imag"]


class CsvFormatError(ValueError):
    """Malformed CSV input; carries the 1-based offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _scalar_row(n: int, value) -> list[str]:
    value = as_cyclo(value)
    return [str(n), str(value.order)] + [_format_rational(c) for c in value.coeffs]


def _scalar_from_row(row: list[str], line: int) -> tuple[int, CycloNumber]:
    try:
        n = int(row[0])
        order = int(row[1])
        coeffs = [Fraction(c) for c in row[2:]]
    except (ValueError, ZeroDivisionError, IndexError) as exc:
        raise CsvFormatError(str(exc), line) from None
    try:
        return n, CycloNumber(order, coeffs)
    except ValueError as exc:
        raise CsvFormatError(str(exc), line) from None


def dump_scalars_csv(path: str, indexed_values, exact: bool = True,
                     meta: str | None = None) -> None:
    """Write (index, scalar) pairs with the shared header layout."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        if meta:
            fh.write(f"# {meta}\n")
        writer = csv.writer(fh)
        if exact:
            writer.writerow(EXACT_HEADER)
            for n, v in indexed_values:
                writer.writerow(_scalar_row(n, v))
        else:
            writer.writerow(EMBED_HEADER)
            for n, v in indexed_values:
                z = as_cyclo(v).to_complex()
                writer.writerow([str(n), repr(z.real), repr(z.imag)])


def dump_qexpansion_csv(path: str, f: QExpansion, exact: bool = True) -> None:
    meta = (f"qexpansion precision={f.precision} weight_twice={f.weight_twice} "
            f"level={f.level} cuspidal={int(f.cuspidal)} "
            f"character={f.character.dump_line()}")
    dump_scalars_csv(path, enumerate(f.coeffs), exact=exact, meta=meta)


def load_qexpansion_csv(path: str) -> QExpansion:
    """Re-parse an exact-mode q-expansion dump, metadata included."""
    meta: dict[str, str] = {}
    values: dict[int, CycloNumber] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        line = 0
        header_seen = False
        for raw in fh:
            line += 1
            raw = raw.rstrip("\n")
            if not raw:
                continue
            if raw.startswith("#"):
                for part in raw[1:].split():
                    if "=" in part:
                        key, _, val = part.partition("=")
                        meta[key] = val
                continue
            row = next(csv.reader([raw]))
            if not header_seen:
                if row[:2] != EXACT_HEADER[:2]:
                    raise CsvFormatError(
                        f"expected exact-mode header {EXACT_HEADER[:2]}, got {row[:2]}", line
                    )
                header_seen = True
                continue
            n, v = _scalar_from_row(row, line)
            values[n] = v
        if not header_seen:
            raise CsvFormatError("missing header row", line)
    precision = int(meta.get("precision", max(values) + 1 if values else 0))
    coeffs = [values.get(n, 0) for n in range(precision)]
    character = None
    if "character" in meta:
        mod_s, vec_s, _, _ = meta["character"].split(";")
        vec = tuple(int(x) for x in vec_s.split(",")) if vec_s else ()
        character = DirichletCharacter(int(mod_s), vec)
    return QExpansion(
        precision,
        coeffs,
        weight_twice=int(meta.get("weight_twice", 0)),
        level=int(meta.get("level", 1)),
        character=character,
        cuspidal=bool(int(meta.get("cuspidal", 0))),
    )


def load_block_values_csv(path: str) -> list:
    """Read `n,value` or `n,value_re,value_im` rows into values[0..max-1].

    Values are exact: rational strings, with an optional second column
    giving the coefficient of i (stored at cyclotomic order 4).  Raises
    CsvFormatError with the offending line number on malformed input,
    including gaps in the index range.
    """
    values: dict[int, object] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        line = 0
        header_seen = False
        for raw in fh:
            line += 1
            stripped = raw.strip()
            if not stripped or stripped.startswith("#"):
                continue
            row = next(csv.reader([raw]))
            row = [c.strip() for c in row if c.strip() != ""]
            if not header_seen:
                if row and row[0].lower() == "n":
                    header_seen = True
                    continue
                raise CsvFormatError("missing header row (expected `n,value`)", line)
            if len(row) not in (2, 3):
                raise CsvFormatError(f"expected 2 or 3 columns, got {len(row)}", line)
            try:
                n = int(row[0])
                re = Fraction(row[1])
                im = Fraction(row[2]) if len(row) == 3 else Fraction(0)
            except (ValueError, ZeroDivisionError) as exc:
                raise CsvFormatError(str(exc), line) from None
            if n < 1:
                raise CsvFormatError(f"index n = {n} must be >= 1", line)
            if n in values:
                raise CsvFormatError(f"duplicate index n = {n}", line)
            if im:
                values[n] = CycloNumber.from_rational(re) + \
                    CycloNumber.root_of_unity(4, 1) * im
            else:
                values[n] = re.numerator if re.denominator == 1 else re
        if not header_seen:
            raise CsvFormatError("missing header row (expected `n,value`)", line)
    if not values:
        raise CsvFormatError("no data rows", line)
    top = max(values)
    missing = next((n for n in range(1, top + 1) if n not in values), None)
    if missing is not None:
        raise CsvFormatError(f"missing index n = {missing} (rows must cover 1..{top})", line)
    return [values[n] for n in range(1, top + 1)]
