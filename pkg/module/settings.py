# flake8: noqa: E501
import logging
from dataclasses import dataclass
from importlib import import_module

from configs.solver_base_config import Base as SolverConfig, load_config
from configs.solver_interface import PROFILE_ENUMS
from module.base.base_solver import Base
from testdata.base.base_testdata import TestData


@dataclass
class Settings:
    config: SolverConfig = None
    testsuite_controller: Base = None
    test_data: TestData = None

    # ----------------------------------------------------------------------------#
    # args come from the pytest command line or from the numrad CLI
    # ----------------------------------------------------------------------------#
    def __init__(self, args: dict) -> None:
        logging.info('input args: %s', args)
        self.config = self.set_config(args.get('profile'), args.get('config'), args.get('overrides') or {})
        self.testsuite_controller = None
        self.test_data = None
        if args.get('test_data'):
            self.test_data = self.get_testdata(args['test_data'])(config=self.config)

    @classmethod
    def from_request(cls, request) -> 'Settings':
        args = {
            'profile': request.config.getoption('--profile', default=PROFILE_ENUMS.DEFAULT.value),
            'config': request.config.getoption('--solver_config', default=None),
            'test_data': request.config.getoption('--test_data', default='reference_examples'),
            'overrides': {'seed': request.config.getoption('--seed', default=None)}
        }
        return cls(args)

    def set_config(self, profile: str = None, path: str = None, overrides: dict = None) -> SolverConfig:
        return load_config(profile or PROFILE_ENUMS.DEFAULT.value, path, **(overrides or {}))

    def get_testdata(self, path: str) -> TestData:
        return import_module(f'testdata.{path}/testdata'.replace('/', '.')).TestData
