"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

from concurrent.futures import ThreadPoolExecutor
from itertools import product

from decouple import config

from common.base_command import BaseCommand, CommandInfo, angle_column, value_column
from common.models import OutputColumn, Quantity, UncertaintyReport
from common.validators import RunConfigInput
from sqrac.montecarlo import build_schedule, calibrated_pair_rate, default_duration, estimate_sd, simulate_counts, spawn_seeds
from sqrac.protocol import ProtocolParams, p_ab_closed, p_ac_closed
from util import log, to_degrees


class McCommand(BaseCommand):
    command_info = CommandInfo(
        name='mc',
        description='Simulated coincidence counts, reconstructed success probabilities and their standard deviation.',
    )

    columns: list[OutputColumn] = [
        value_column('eta0'),
        value_column('eta1'),
        angle_column('alpha'),
        angle_column('beta'),
        OutputColumn(name='quantity'),
        OutputColumn(name='repeat'),
        OutputColumn(name='seed'),
        OutputColumn(name='counts'),
        value_column('theory'),
        value_column('estimate'),
        value_column('sd'),
    ]

    def get_rows(self, run_config: RunConfigInput) -> list[dict]:
        settings = self.get_nominal_settings(run_config)
        quantities = [run_config.quantity] if run_config.quantity else list(Quantity)
        master_seed = run_config.seed if run_config.seed is not None else config('SQRAC_SEED', default=0, cast=int)
        seeds = spawn_seeds(master_seed, run_config.repeats)
        duration = run_config.duration or default_duration()
        pair_rate = calibrated_pair_rate(total_counts=run_config.total_counts, duration=duration)
        workers = run_config.workers or config('SQRAC_WORKERS', default=1, cast=int)

        tasks = list(product(settings, quantities, enumerate(seeds)))
        log(f'mc: {len(tasks)} simulations, pair rate {pair_rate:.1f}/s per setting, {duration} s windows, master seed {master_seed}')

        def simulate(task: tuple[ProtocolParams, Quantity, tuple[int, int]]) -> tuple[int, UncertaintyReport]:
            params, quantity, (_, seed) = task
            schedule = build_schedule(quantity, params, pair_rate=pair_rate, duration=duration, sub_windows=run_config.groups)
            record = simulate_counts(schedule, params, seed)
            return record.total, estimate_sd(record, groups=run_config.groups)

        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(simulate, tasks))

        rows: list[dict] = []
        for (params, quantity, (repeat, seed)), (total, uncertainty_report) in zip(tasks, results):
            log(f'mc: {quantity.value} repeat {repeat} seed {seed} realised {total} counts')
            rows.append(
                {
                    'eta0': params.eta0,
                    'eta1': params.eta1,
                    'alpha': to_degrees(params.alpha),
                    'beta': to_degrees(params.beta),
                    'quantity': quantity,
                    'repeat': repeat,
                    'seed': seed,
                    'counts': total,
                    'theory': p_ab_closed(params) if quantity == Quantity.P_AB else p_ac_closed(params),
                    'estimate': uncertainty_report.estimate,
                    'sd': uncertainty_report.sd,
                },
            )
        return rows
