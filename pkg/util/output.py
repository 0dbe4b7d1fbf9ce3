import csv
import io
import json
import sys
from enum import Enum
from pathlib import Path
from typing import Any, Optional

import numpy as np

from common.encoding import DefaultJSONEncoder
from common.exceptions import OutputException
from common.models import OutputColumn, OutputFormat


def format_cell(value: Any, precision: Optional[int] = None) -> str:
    if value is None:
        return ''
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (list, tuple)):
        return '|'.join(format_cell(item, precision) for item in value)
    if precision is not None and isinstance(value, (float, np.floating)):
        # adding 0.0 turns -0.0 into 0.0
        return f'{round(float(value), precision) + 0.0:.{precision}f}'
    return str(value)


class ReportWriter:
    """
    Writes report rows as csv or json, either to a file or to stdout. Column order follows the command's columns.
    """

    def __init__(self, output_format: OutputFormat = OutputFormat.CSV, out: Optional[str] = None):
        self.output_format = output_format
        self.out = out

    def render(self, columns: list[OutputColumn], rows: list[dict]) -> str:
        if self.output_format == OutputFormat.JSON:
            ordered = [{column.name: row.get(column.name) for column in columns} for row in rows]
            return json.dumps(ordered, indent=2, cls=DefaultJSONEncoder) + '\n'

        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow([column.name for column in columns])
        for row in rows:
            writer.writerow([format_cell(row.get(column.name), column.precision) for column in columns])
        return buffer.getvalue()

    def write(self, columns: list[OutputColumn], rows: list[dict]) -> None:
        content = self.render(columns, rows)
        if self.out is None:
            sys.stdout.write(content)
            return
        try:
            with Path(self.out).open('w', newline='') as output_file:
                output_file.write(content)
        except OSError as e:
            raise OutputException(uid=self.out, message=f'cannot write output: {e.strerror or e}') from e
