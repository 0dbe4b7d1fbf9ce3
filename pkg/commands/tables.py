"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

from typing import Callable, Optional

from common.base_command import BaseCommand, CommandInfo, value_column
from common.models import CellStatus, OutputColumn
from common.validators import RunConfigInput, TableId
from sqrac.analysis import chsh_closed, randomness_report
from sqrac.bounds import certify, sharpness_bounds
from sqrac.optimizer import optimize
from sqrac.protocol import ProtocolParams, p_ab_closed, p_abc, p_ac_closed, per_bit_success, sharpness_from_theta_lambda
from util import log, to_radians
from util.reference_tables import ReferenceColumn, ReferenceRow, ReferenceTable, load_reference_tables


def _sharpness(row: ReferenceRow) -> float:
    return sharpness_from_theta_lambda(to_radians(row.key))


def _sharpness_pair(table: ReferenceTable, row: ReferenceRow) -> tuple[float, float]:
    eta1 = _sharpness(row)
    return (eta1 if table.eta0 is None else table.eta0), eta1


def _optimal_params(eta0: float, eta1: float) -> ProtocolParams:
    optimal_setting = optimize(eta0, eta1)
    return ProtocolParams(eta0=eta0, eta1=eta1, alpha=optimal_setting.alpha, beta=optimal_setting.beta)


def measurement_settings(table: ReferenceTable, row: ReferenceRow) -> dict[str, float]:
    eta0, eta1 = _sharpness_pair(table, row)
    optimal_setting = optimize(eta0, eta1)
    return {
        'eta': eta1,
        'eta1': eta1,
        'alpha': optimal_setting.alpha_degrees,
        'beta': optimal_setting.beta_degrees,
    }


def measured_sharpness_bounds(table: ReferenceTable, row: ReferenceRow) -> dict[str, float]:
    """
    Bounds from the printed per-bit success probabilities, next to the theoretical per-bit values.
    """
    p_ab = (row.values['p_mb0'] + row.values['p_mb1']) / 2
    p_ac = (row.values['p_mc0'] + row.values['p_mc1']) / 2
    eta_low, eta_up = sharpness_bounds(p_ab, p_ac)

    eta0, eta1 = _sharpness_pair(table, row)
    per_bit = per_bit_success(ProtocolParams.unbiased(eta0, eta1))
    return {
        'eta_low': eta_low.value,
        'eta_up': eta_up.value,
        'p_mb0': per_bit['p_ab_x0'],
        'p_mb1': per_bit['p_ab_x1'],
        'p_mc0': per_bit['p_ac_x0'],
        'p_mc1': per_bit['p_ac_x1'],
    }


def success_probabilities(table: ReferenceTable, row: ReferenceRow) -> dict[str, float]:
    eta0, eta1 = _sharpness_pair(table, row)
    unbiased = ProtocolParams.unbiased(eta0, eta1)
    optimal = _optimal_params(eta0, eta1)
    return {
        'eta': eta1,
        'p_ab': p_ab_closed(unbiased),
        'p_ac': p_ac_closed(unbiased),
        'p_abc': p_abc(unbiased),
        'p_ab_opt': p_ab_closed(optimal),
        'p_ac_opt': p_ac_closed(optimal),
        'p_abc_opt': p_abc(optimal),
    }


def certified_bounds(table: ReferenceTable, row: ReferenceRow) -> dict[str, float]:
    """
    Biasness and incompatibility bounds evaluated on the theoretical success probabilities at the optimal setting.
    """
    eta0, eta1 = _sharpness_pair(table, row)
    optimal = _optimal_params(eta0, eta1)
    bounds_report = certify(p_ab_closed(optimal), p_ac_closed(optimal), optimal)
    return {
        'eta': eta1,
        's_overlap': bounds_report.s_up,
        'd_s': bounds_report.d_s_low,
        't_overlap': bounds_report.t_up,
        'd_t': bounds_report.d_t_low,
    }


def certified_randomness(table: ReferenceTable, row: ReferenceRow) -> dict[str, float]:
    eta0, eta1 = _sharpness_pair(table, row)
    theory = randomness_report(*chsh_closed(ProtocolParams.unbiased(eta0, eta1)))
    measured = randomness_report(row.values['i_ab'], row.values['i_ac'])
    return {
        'eta': eta1,
        'i_ab': theory.i_ab,
        'i_ac': theory.i_ac,
        'hmin': measured.hmin_total,
    }


class TablesCommand(BaseCommand):
    command_info = CommandInfo(
        name='tables',
        description='Recomputes the published tables and compares them cell by cell.',
    )

    columns: list[OutputColumn] = [
        OutputColumn(name='table'),
        OutputColumn(name='key'),
        OutputColumn(name='column'),
        value_column('reference'),
        value_column('computed'),
        value_column('diff'),
        value_column('tolerance'),
        OutputColumn(name='status'),
        OutputColumn(name='note'),
    ]

    computations: dict[str, Callable[[ReferenceTable, ReferenceRow], dict[str, float]]] = {
        'I': measurement_settings,
        'II': measurement_settings,
        'III': measurement_settings,
        'IV': measured_sharpness_bounds,
        'V': success_probabilities,
        'VI': success_probabilities,
        'VII': certified_bounds,
        'VIII': certified_randomness,
    }

    @staticmethod
    def compare(
        table: ReferenceTable,
        row: ReferenceRow,
        column: ReferenceColumn,
        computed: float,
        tolerance_override: Optional[float] = None,
    ) -> dict:
        reference = row.values[column.name]
        tolerance = column.tolerance if tolerance_override is None else tolerance_override
        diff = computed - reference
        note = table.exclusion_reason(row.key, column.name)

        if note is not None:
            status = CellStatus.EXCLUDED
        elif column.info:
            status = CellStatus.INFO
        else:
            status = CellStatus.PASS if abs(diff) <= tolerance else CellStatus.FAIL

        return {
            'table': table.table_id,
            'key': f'{row.key:g}',
            'column': column.name,
            'reference': reference,
            'computed': computed,
            'diff': diff,
            'tolerance': tolerance,
            'status': status,
            'note': note,
        }

    def get_rows(self, run_config: RunConfigInput) -> list[dict]:
        reference_tables = load_reference_tables()
        if run_config.which == TableId.ALL:
            table_ids = [table_id.value for table_id in TableId if table_id != TableId.ALL]
        else:
            table_ids = [run_config.which.value]

        rows: list[dict] = []
        for table_id in table_ids:
            table = reference_tables[table_id]
            compute = self.computations[table_id]
            for row in table.rows:
                computed = compute(table, row)
                for column in table.columns:
                    rows.append(self.compare(table, row, column, computed[column.name], run_config.tol))

        counts = {status: sum(1 for row in rows if row['status'] == status) for status in CellStatus}
        log('tables: ' + ', '.join(f'{count} {status.value}' for status, count in counts.items()))
        return rows
