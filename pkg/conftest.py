from dataclasses import dataclass, field
from typing import List
import os

import allure
import pytest

from configs.solver_interface import PROFILE_ENUMS
from module.file_operation import list_json_files, read_json
from module.settings import Settings

TESTSUITE_CONFIG_DIR = os.path.join(os.path.dirname(__file__), 'testsuite_configs')


@dataclass
class TestsuiteConfig:
    __test__ = False

    @dataclass
    class metadata_obj:
        testsuite: str
        tags: list

    @dataclass
    class testcase_obj:
        name: str = None
        tags: List[str] = field(default_factory=list)
        severity: str = None
        story: str = None
        feature: str = None

    metadata: List[metadata_obj] = field(default_factory=list)
    testcases: List[testcase_obj] = field(default_factory=list)


def load_testsuite_config(paths) -> TestsuiteConfig:
    if isinstance(paths, str):
        paths = [p for p in paths.split(',') if p]
    config = TestsuiteConfig()

    for path in paths:
        config_json = read_json(path)
        config.metadata.append(TestsuiteConfig.metadata_obj(
            testsuite=config_json['metadata']['testsuite_name'],
            tags=config_json['metadata']['tags']
        ))
        for item in config_json['testcases']:
            config.testcases.append(TestsuiteConfig.testcase_obj(
                name=item['name'],
                tags=item.get('tags', []),
                severity=item.get('severity'),
                story=item.get('story'),
                feature=item.get('feature')
            ))
    return config


def pytest_addoption(parser):
    parser.addoption('--profile', action='store', default=PROFILE_ENUMS.DEFAULT.value,
                     help='solver profile; DEFAULT, FAST')
    parser.addoption('--solver_config', action='store', default=None,
                     help='YAML file with solver knobs')
    parser.addoption('--test_data', action='store', default='reference_examples',
                     help='name of test data set under testdata/')
    parser.addoption('--testsuite_config', action='store', default=None,
                     help='comma separated testsuite configs (default: every json under testsuite_configs/)')
    parser.addoption('--seed', action='store', type=int, default=None,
                     help='overrides the profile seed of the property suites')


def pytest_configure(config):
    config.addinivalue_line('markers', 'property: seeded property suites')
    config.addinivalue_line('markers', 'reference: reference-value reproduction')
    config.addinivalue_line('markers', 'oracle: agreement with independent oracles')


@pytest.fixture(scope='session', autouse=True)
def setup(request) -> Settings:
    setup = Settings.from_request(request)
    yield setup


@pytest.hookimpl(tryfirst=True)
def pytest_collection_modifyitems(session, config, items):
    paths = config.getoption('--testsuite_config', default=None)
    if not paths:
        paths = list_json_files(TESTSUITE_CONFIG_DIR)
    testsuite_config = load_testsuite_config(paths)
    testcases = {tc.name: tc for tc in testsuite_config.testcases}

    for item in items:
        testcase_obj = testcases.get(item.originalname or item.name)
        if not testcase_obj:
            continue
        # Add Marker for Testcase
        if testcase_obj.severity:
            item.add_marker(allure.severity(testcase_obj.severity))
        if testcase_obj.tags:
            item.add_marker(allure.tag(*testcase_obj.tags))
        if testcase_obj.story:
            item.add_marker(allure.story(testcase_obj.story))
        if testcase_obj.feature:
            item.add_marker(allure.feature(testcase_obj.feature))
