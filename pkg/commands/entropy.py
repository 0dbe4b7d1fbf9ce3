"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

from typing import Optional

import numpy as np

from common.base_command import BaseCommand, CommandInfo, angle_column, value_column
from common.models import OutputColumn, RandomnessReport
from common.validators import RunConfigInput
from sqrac.analysis import chsh_closed, randomness_report, total_min_entropy_sweep
from sqrac.protocol import MAX_THETA_LAMBDA, ProtocolParams, theta_lambda_from_sharpness
from util import log, to_degrees, to_radians

# half-degree steps over the full wave plate range
DEFAULT_SWEEP_STEPS = 46


class EntropyCommand(BaseCommand):
    command_info = CommandInfo(
        name='entropy',
        description='CHSH values of both pairs and the min-entropy they certify.',
    )

    columns: list[OutputColumn] = [
        angle_column('theta_lambda'),
        value_column('eta0'),
        value_column('eta1'),
        value_column('i_ab'),
        value_column('i_ac'),
        value_column('hmin_ab'),
        value_column('hmin_ac'),
        value_column('hmin_total'),
    ]

    @staticmethod
    def to_row(theta_lambda: Optional[float], eta0: Optional[float], eta1: Optional[float], report: RandomnessReport) -> dict:
        return {
            'theta_lambda': theta_lambda,
            'eta0': eta0,
            'eta1': eta1,
            'i_ab': report.i_ab,
            'i_ac': report.i_ac,
            'hmin_ab': report.hmin_ab,
            'hmin_ac': report.hmin_ac,
            'hmin_total': report.hmin_total,
        }

    def get_rows(self, run_config: RunConfigInput) -> list[dict]:
        if run_config.i_ab is not None:
            log('entropy: observed CHSH values')
            return [self.to_row(None, None, None, randomness_report(run_config.i_ab, run_config.i_ac))]

        # unbiased measurements along the equal-sharpness line unless both sharpness values are given
        if run_config.eta0 is None and run_config.eta1 is None:
            if run_config.theta_lambda is not None:
                theta_lambdas = [to_radians(theta_lambda) for theta_lambda in run_config.theta_lambda]
            else:
                theta_lambdas = [float(theta_lambda) for theta_lambda in np.linspace(0.0, MAX_THETA_LAMBDA, DEFAULT_SWEEP_STEPS)]
            log(f'entropy: sweep over {len(theta_lambdas)} wave plate angles')
            return [
                self.to_row(to_degrees(theta_lambda), eta, eta, report)
                for theta_lambda, eta, report in total_min_entropy_sweep(theta_lambdas)
            ]

        sharpness_pairs = self.require_sharpness_pairs(run_config)
        log(f'entropy: {len(sharpness_pairs)} sharpness pairs')
        return [
            self.to_row(
                to_degrees(theta_lambda_from_sharpness(eta1)),
                eta0,
                eta1,
                randomness_report(*chsh_closed(ProtocolParams.unbiased(eta0, eta1))),
            )
            for eta0, eta1 in sharpness_pairs
        ]
