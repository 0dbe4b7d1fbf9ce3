"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

from common.base_command import BaseCommand, CommandInfo, angle_column, value_column
from common.models import OutputColumn
from common.validators import RunConfigInput
from sqrac.analysis import joint_decoding_comparison
from sqrac.optimizer import optimize_many
from sqrac.protocol import theta_lambda_from_sharpness
from util import log, to_degrees


class OptimizeCommand(BaseCommand):
    command_info = CommandInfo(
        name='optimize',
        description='Measurement directions of Bob and Charlie maximising the smaller of both success probabilities.',
    )

    columns: list[OutputColumn] = [
        value_column('eta0'),
        value_column('eta1'),
        angle_column('theta_lambda1'),
        angle_column('alpha'),
        angle_column('beta'),
        value_column('p_ab'),
        value_column('p_ac'),
        value_column('p_abc'),
        value_column('p_abc_unbiased'),
        value_column('increment'),
        OutputColumn(name='branch'),
    ]

    def get_rows(self, run_config: RunConfigInput) -> list[dict]:
        sharpness_pairs = self.require_sharpness_pairs(run_config)
        log(f'optimize: {len(sharpness_pairs)} sharpness pairs')

        rows: list[dict] = []
        for point in optimize_many(sharpness_pairs):
            joint_decoding = joint_decoding_comparison(point.eta0, point.eta1, point.setting)
            rows.append(
                {
                    'eta0': point.eta0,
                    'eta1': point.eta1,
                    'theta_lambda1': to_degrees(theta_lambda_from_sharpness(point.eta1)),
                    'alpha': point.setting.alpha_degrees,
                    'beta': point.setting.beta_degrees,
                    'p_ab': point.report.p_ab,
                    'p_ac': point.report.p_ac,
                    'p_abc': point.report.p_abc,
                    'p_abc_unbiased': joint_decoding.p_abc_unbiased,
                    'increment': joint_decoding.increment,
                    'branch': point.setting.branch,
                },
            )
        return rows
