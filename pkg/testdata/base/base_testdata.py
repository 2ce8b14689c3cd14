from enum import Enum


class TestDataUnitKeys(str, Enum):
    __test__ = False

    content = 'content'
    parameters = 'parameters'
    expect = 'expect'


class TestData(object):
    """Reference parameters and expected values keyed by test function name.

    Subclasses fill `data[TestDataUnitKeys.content]` with
    `{test_name: {parameters: {...}, expect: {...}}}`.
    """
    __test__ = False

    data: dict = {TestDataUnitKeys.content: {}}

    def __init__(self, config=None) -> None:
        self.config = config
