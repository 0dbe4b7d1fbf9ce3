"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

from common.base_command import BaseCommand, CommandInfo, angle_column, value_column
from common.models import OutputColumn
from common.validators import RunConfigInput
from sqrac.bounds import certify
from sqrac.protocol import p_ab_closed, p_ac_closed
from util import log, to_degrees


class BoundsCommand(BaseCommand):
    command_info = CommandInfo(
        name='bounds',
        description='Sharpness, biasness and incompatibility bounds certified by observed success probabilities.',
    )

    columns: list[OutputColumn] = [
        value_column('eta0'),
        value_column('eta1'),
        angle_column('alpha'),
        angle_column('beta'),
        value_column('p_ab'),
        value_column('p_ac'),
        value_column('eta_low'),
        value_column('eta_up'),
        value_column('s_up'),
        value_column('t_up'),
        value_column('d_s_low'),
        value_column('d_t_low'),
        value_column('m'),
        value_column('d_s_nominal'),
        value_column('p_ab_max'),
        OutputColumn(name='clamped'),
    ]

    def get_rows(self, run_config: RunConfigInput) -> list[dict]:
        settings = self.get_nominal_settings(run_config)
        observed = run_config.p_ab is not None
        log(f'bounds: {len(settings)} settings, {"observed" if observed else "theoretical"} success probabilities')

        rows: list[dict] = []
        for params in settings:
            p_ab = run_config.p_ab if observed else p_ab_closed(params)
            p_ac = run_config.p_ac if observed else p_ac_closed(params)
            bounds_report = certify(p_ab, p_ac, params)
            rows.append(
                {
                    'eta0': params.eta0,
                    'eta1': params.eta1,
                    'alpha': to_degrees(params.alpha),
                    'beta': to_degrees(params.beta),
                    'p_ab': p_ab,
                    'p_ac': p_ac,
                    'eta_low': bounds_report.eta_low,
                    'eta_up': bounds_report.eta_up,
                    's_up': bounds_report.s_up,
                    't_up': bounds_report.t_up,
                    'd_s_low': bounds_report.d_s_low,
                    'd_t_low': bounds_report.d_t_low,
                    'm': bounds_report.m,
                    'd_s_nominal': bounds_report.d_s_nominal,
                    'p_ab_max': bounds_report.p_ab_max,
                    'clamped': bounds_report.clamped,
                },
            )
        return rows
