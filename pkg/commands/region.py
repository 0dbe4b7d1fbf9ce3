"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

from common.base_command import BaseCommand, CommandInfo, value_column
from common.models import OutputColumn
from common.validators import RunConfigInput
from sqrac.optimizer import scan_region, unbiased_violation_interval
from util import log


class RegionCommand(BaseCommand):
    command_info = CommandInfo(
        name='region',
        description='Boundary of the sharpness region in which both decoders beat the classical bound.',
    )

    columns: list[OutputColumn] = [
        OutputColumn(name='index'),
        value_column('eta0'),
        value_column('eta1'),
    ]

    def get_rows(self, run_config: RunConfigInput) -> list[dict]:
        scan = scan_region(grid=run_config.grid, workers=run_config.workers)
        lower, upper = unbiased_violation_interval()
        log(
            f'region: {scan.grid}x{scan.grid} grid, {scan.violation_count} violating points, '
            f'{len(scan.boundary)} boundary points, equal-sharpness interval [{lower:.6f}, {upper:.6f}]',
        )
        return [{'index': index, 'eta0': eta0, 'eta1': eta1} for index, (eta0, eta1) in enumerate(scan.boundary)]
