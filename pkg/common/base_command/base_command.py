"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass

from validataclass.validators import DataclassValidator

from common.exceptions import InvalidParameterException
from common.models import OutputColumn
from common.validators import ProtocolParamsInput, RunConfigInput
from sqrac.optimizer import optimize
from sqrac.protocol import ProtocolParams

ANGLE_PRECISION = 2
PROBABILITY_PRECISION = 6


@dataclass(frozen=True)
class CommandInfo:
    name: str
    description: str


def angle_column(name: str) -> OutputColumn:
    return OutputColumn(name=name, precision=ANGLE_PRECISION)


def value_column(name: str) -> OutputColumn:
    return OutputColumn(name=name, precision=PROBABILITY_PRECISION)


class BaseCommand(ABC):
    protocol_params_validator = DataclassValidator(ProtocolParamsInput)

    columns: list[OutputColumn] = []

    @property
    @abstractmethod
    def command_info(self) -> CommandInfo:
        pass

    @abstractmethod
    def get_rows(self, run_config: RunConfigInput) -> list[dict]:
        pass

    def get_protocol_params(self, eta0: float, eta1: float, alpha: float = 45.0, beta: float = 45.0) -> ProtocolParams:
        """
        Protocol parameters from sharpness values and angles in degrees, validated like any other user input.
        """
        protocol_params_input: ProtocolParamsInput = self.protocol_params_validator.validate(
            {'eta0': eta0, 'eta1': eta1, 'alpha': alpha, 'beta': beta},
        )
        return protocol_params_input.to_protocol_params()

    def require_sharpness_pairs(self, run_config: RunConfigInput) -> list[tuple[float, float]]:
        sharpness_pairs = run_config.sharpness_pairs()
        if not sharpness_pairs:
            raise InvalidParameterException(
                uid=self.command_info.name,
                message='no sharpness given, use --eta0, --eta1 or --theta-lambda',
            )
        return sharpness_pairs

    def get_nominal_settings(self, run_config: RunConfigInput) -> list[ProtocolParams]:
        """
        The given angles for every sharpness pair, or the optimal ones when no angle is given.
        """
        settings: list[ProtocolParams] = []
        for eta0, eta1 in self.require_sharpness_pairs(run_config):
            if run_config.alpha is None and run_config.beta is None:
                optimal_setting = optimize(eta0, eta1)
                settings.append(ProtocolParams(eta0=eta0, eta1=eta1, alpha=optimal_setting.alpha, beta=optimal_setting.beta))
                continue
            for alpha, beta in run_config.angle_pairs():
                settings.append(self.get_protocol_params(eta0, eta1, alpha, beta))
        return settings
