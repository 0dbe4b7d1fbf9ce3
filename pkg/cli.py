"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

import argparse
import json
import sys
from importlib import import_module
from inspect import isclass
from pathlib import Path
from pkgutil import iter_modules
from typing import Optional

from validataclass.exceptions import ValidationError
from validataclass.validators import DataclassValidator

from common.base_command import BaseCommand, CommandInfo
from common.encoding import DefaultJSONEncoder
from common.exceptions import SqracException
from common.models import OutputFormat, Quantity
from common.validators import RunConfigInput, TableId
from util.output import ReportWriter

EXIT_SUCCESS = 0
EXIT_ERROR = 1
EXIT_USAGE = 2


def get_commands() -> dict[str, BaseCommand]:
    commands: dict[str, BaseCommand] = {}
    package_dir = Path(__file__).parent.joinpath('commands')
    for _, module_name, _ in iter_modules([str(package_dir)]):
        module = import_module(f'commands.{module_name}')
        for attribute_name in dir(module):
            attribute = getattr(module, attribute_name)
            if not isclass(attribute):
                continue
            if not issubclass(attribute, BaseCommand) or attribute is BaseCommand:
                continue
            # command_info is just set at actual final classes
            if not isinstance(getattr(attribute, 'command_info', None), CommandInfo):
                continue
            commands[attribute.command_info.name] = attribute()
    return commands


def parse_args(commands: dict[str, BaseCommand], argv: Optional[list[str]] = None) -> dict:
    parser = argparse.ArgumentParser(
        prog='sqrac',
        description='Sequential quantum random access codes with two decoders sharing one entangled pair.',
    )
    parser.add_argument(
        'command',
        type=str,
        choices=sorted(commands),
        help='; '.join(f'{name}: {command.command_info.description}' for name, command in sorted(commands.items())),
    )

    sweep = parser.add_argument_group('parameters, list values expand into sweeps')
    sweep.add_argument('--eta0', nargs='+', type=float, help='Sharpness of Bob for his first setting')
    sweep.add_argument('--eta1', nargs='+', type=float, help='Sharpness of Bob for his second setting')
    sweep.add_argument('--theta-lambda', nargs='+', type=float, help='Wave plate angle in degrees setting eta1 = cos(4 theta)')
    sweep.add_argument('--alpha', nargs='+', type=float, help='Angle of Bob\'s measurement directions in degrees')
    sweep.add_argument('--beta', nargs='+', type=float, help='Angle of Charlie\'s measurement directions in degrees')

    observed = parser.add_argument_group('observed values')
    observed.add_argument('--p-ab', type=float, help='Observed success probability of Bob, for bounds')
    observed.add_argument('--p-ac', type=float, help='Observed success probability of Charlie, for bounds')
    observed.add_argument('--i-ab', type=float, help='Observed CHSH value of Alice and Bob, for entropy')
    observed.add_argument('--i-ac', type=float, help='Observed CHSH value of Alice and Charlie, for entropy')

    simulation = parser.add_argument_group('simulation')
    simulation.add_argument('--duration', type=float, help='Measurement window per trial in seconds')
    simulation.add_argument('--total-counts', type=float, help='Expected coincidences per full measurement')
    simulation.add_argument('--repeats', type=int, help='Independent simulations per setting')
    simulation.add_argument('--groups', type=int, help='Random groups for the standard deviation')
    simulation.add_argument('--quantity', choices=[quantity.value for quantity in Quantity], help='Simulate only one decoder')

    parser.add_argument('--grid', type=int, help='Grid resolution of the region scan')
    parser.add_argument('--workers', type=int, help='Worker threads')
    parser.add_argument('--seed', type=int, help='Master seed')
    parser.add_argument('--which', choices=[table_id.value for table_id in TableId], help='Table to reproduce')
    parser.add_argument('--tol', type=float, help='Override every comparison tolerance')
    parser.add_argument('--format', choices=[output_format.value for output_format in OutputFormat], help='Output format')
    parser.add_argument('--out', type=str, help='Output path, stdout if missing')

    return vars(parser.parse_args(argv))


def filter_none(data: dict) -> dict:
    return {key: value for key, value in data.items() if value is not None}


def fail(message: str, exit_code: int) -> int:
    print(f'Error: {message}', file=sys.stderr)  # noqa: T201
    return exit_code


def main(argv: Optional[list[str]] = None) -> int:
    commands = get_commands()
    # argparse exits with EXIT_USAGE on its own
    args = parse_args(commands, argv)

    try:
        run_config: RunConfigInput = DataclassValidator(RunConfigInput).validate(filter_none(args))
        command = commands[run_config.command]
        rows = command.get_rows(run_config)
        ReportWriter(run_config.format, run_config.out).write(command.columns, rows)
    except ValidationError as e:
        return fail(f'invalid arguments {json.dumps(e.to_dict(), cls=DefaultJSONEncoder)}', EXIT_USAGE)
    except SqracException as e:
        return fail(str(e), EXIT_ERROR)
    except Exception as e:
        return fail(f'{type(e).__name__}: {e}', EXIT_ERROR)

    return EXIT_SUCCESS


if __name__ == '__main__':
    sys.exit(main())
