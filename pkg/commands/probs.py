"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

from common.base_command import BaseCommand, CommandInfo, angle_column, value_column
from common.models import OutputColumn
from common.validators import RunConfigInput
from sqrac.protocol import p_ab_bruteforce, p_ab_closed, p_abc, p_abc_bruteforce, p_ac_bruteforce, p_ac_closed
from util import log, to_degrees


class ProbsCommand(BaseCommand):
    command_info = CommandInfo(
        name='probs',
        description='Average success probabilities of both decoders and of joint decoding, closed form and brute force.',
    )

    columns: list[OutputColumn] = [
        value_column('eta0'),
        value_column('eta1'),
        angle_column('alpha'),
        angle_column('beta'),
        value_column('p_ab'),
        value_column('p_ac'),
        value_column('p_abc'),
        value_column('p_ab_bruteforce'),
        value_column('p_ac_bruteforce'),
        value_column('p_abc_bruteforce'),
    ]

    def get_rows(self, run_config: RunConfigInput) -> list[dict]:
        sharpness_pairs = self.require_sharpness_pairs(run_config)
        angle_pairs = run_config.angle_pairs()
        log(f'probs: {len(sharpness_pairs) * len(angle_pairs)} parameter points')

        rows: list[dict] = []
        for eta0, eta1 in sharpness_pairs:
            for alpha, beta in angle_pairs:
                params = self.get_protocol_params(eta0, eta1, alpha, beta)
                rows.append(
                    {
                        'eta0': params.eta0,
                        'eta1': params.eta1,
                        'alpha': to_degrees(params.alpha),
                        'beta': to_degrees(params.beta),
                        'p_ab': p_ab_closed(params),
                        'p_ac': p_ac_closed(params),
                        'p_abc': p_abc(params),
                        'p_ab_bruteforce': p_ab_bruteforce(params),
                        'p_ac_bruteforce': p_ac_bruteforce(params),
                        'p_abc_bruteforce': p_abc_bruteforce(params),
                    },
                )
        return rows
