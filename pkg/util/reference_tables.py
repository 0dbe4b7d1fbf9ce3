import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import jsonschema

from common.exceptions import ReferenceTableException

BASE_DIR: Path = Path(__file__).resolve().parent.parent
REFERENCE_TABLE_PATH: Path = BASE_DIR / 'data' / 'reference_tables.json'
SCHEMA_PATH: Path = BASE_DIR / 'schema.json'


@dataclass(frozen=True)
class ReferenceColumn:
    name: str
    tolerance: float
    # info columns are reported, never judged
    info: bool = False


@dataclass(frozen=True)
class ReferenceRow:
    key: float
    values: dict[str, float]


@dataclass
class ReferenceTable:
    table_id: str
    description: str
    eta0: Optional[float]
    columns: list[ReferenceColumn]
    rows: list[ReferenceRow]
    excluded: dict[tuple[float, str], str] = field(default_factory=dict)

    def exclusion_reason(self, key: float, column: str) -> Optional[str]:
        return self.excluded.get((key, column))


def validate_reference_data(data: dict, schema: Optional[dict] = None) -> None:
    if schema is None:
        schema = json.loads(SCHEMA_PATH.read_text())

    validator = jsonschema.Draft7Validator(schema)
    try:
        validator.validate(data)
    except jsonschema.ValidationError as e:
        raise ReferenceTableException(
            uid='.'.join(str(p) for p in e.absolute_path) or 'root',
            message=e.message,
        ) from e

    # cross references the schema cannot express
    for table_id, table in data['tables'].items():
        column_names = set(table['columns'])
        for row in table['rows']:
            missing = column_names - set(row['values'])
            if missing:
                raise ReferenceTableException(
                    uid=f'tables.{table_id}',
                    message=f'row {row["key"]} lacks {", ".join(sorted(missing))}',
                )
        for exclusion in table['excluded']:
            if exclusion['column'] not in column_names:
                raise ReferenceTableException(uid=f'tables.{table_id}', message=f'unknown excluded column {exclusion["column"]}')


def load_reference_tables(path: Optional[Path] = None) -> dict[str, ReferenceTable]:
    path = path or REFERENCE_TABLE_PATH
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ReferenceTableException(uid=str(path), message=f'cannot read reference tables: {e}') from e

    validate_reference_data(data)

    tables: dict[str, ReferenceTable] = {}
    for table_id, table in data['tables'].items():
        tables[table_id] = ReferenceTable(
            table_id=table_id,
            description=table['description'],
            eta0=table['eta0'],
            columns=[
                ReferenceColumn(name=name, tolerance=column['tolerance'], info=column.get('info', False))
                for name, column in table['columns'].items()
            ],
            rows=[ReferenceRow(key=float(row['key']), values=row['values']) for row in table['rows']],
            excluded={(float(item['key']), item['column']): item['reason'] for item in table['excluded']},
        )
    return tables
