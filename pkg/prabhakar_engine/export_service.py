"""
Export Service - Render computed tables as CSV text
"""
import csv
import io
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

from .exceptions import DomainError

logger = logging.getLogger(__name__)

Number = Optional[Union[int, float]]


@dataclass
class CsvTable:
    """
    Header, numeric rows and '#'-prefixed comment lines.

    A None entry is an empty cell (a column with no value at that row).
    """

    header: List[str]
    rows: List[List[Number]] = field(default_factory=list)
    comments: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.header:
            raise DomainError("a CSV table needs a header")
        for row in self.rows:
            self._check_row(row)

    def _check_row(self, row: Sequence[Number]) -> None:
        if len(row) != len(self.header):
            raise DomainError(f"row has {len(row)} entries, header has {len(self.header)}")

    def add_row(self, row: Sequence[Number]) -> None:
        self._check_row(row)
        self.rows.append(list(row))

    def column(self, name: str) -> List[Number]:
        """All values of one column."""
        index = self.header.index(name)
        return [row[index] for row in self.rows]


class ExportService:
    """
    Service for exporting computed tables.

    Numbers are written in the shortest decimal form that reads back to the
    same double, so identical tables give byte-identical files.
    """

    def __init__(self):
        """Initialize the ExportService."""
        logger.info("ExportService initialized")

    @staticmethod
    def format_number(value: Number) -> str:
        """Shortest round-trip text for a number, '' for a missing value."""
        if value is None:
            return ''
        if isinstance(value, bool):
            return str(int(value))
        if isinstance(value, int):
            return str(value)
        value = float(value)
        if math.isnan(value):
            return 'nan'
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return repr(value)

    def export_to_csv(self, table: CsvTable) -> str:
        """
        Export a table to CSV text.

        Args:
            table: Table to render

        Returns:
            CSV-formatted string with LF line endings
        """
        output = io.StringIO()
        for key, value in table.comments.items():
            output.write(f"# {key}: {value}\n")

        writer = csv.writer(output, lineterminator='\n')
        writer.writerow(table.header)
        for row in table.rows:
            writer.writerow([self.format_number(value) for value in row])

        logger.debug(f"Exported {len(table.rows)} rows to CSV")
        return output.getvalue()

    def write_csv(self, table: CsvTable, path: Union[str, Path]) -> Path:
        """Write the CSV text to a UTF-8 file; OSError propagates."""
        path = Path(path)
        path.write_text(self.export_to_csv(table), encoding='utf-8', newline='')
        logger.info(f"Wrote {len(table.rows)} rows to {path}")
        return path
