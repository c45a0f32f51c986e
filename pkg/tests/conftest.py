import pytest

from totientgaps.arith import ArithSettings
from totientgaps.sink import NullSink, ReportSink


@pytest.fixture
def settings():
    return ArithSettings()


@pytest.fixture
def sink():
    return ReportSink(NullSink())
