"""
Where progress of a computation goes. Verifiers write their notes to a
ReportSink, which keeps them for the report and passes them on to the
command line's sink: logging normally, nothing under --quiet.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional


@dataclass(frozen=True)
class Note:
    level: int
    text: str

    def __str__(self) -> str:
        if self.level <= logging.INFO:
            return self.text
        return '{}: {}'.format(logging.getLevelName(self.level).lower(), self.text)


class Sink(object):
    def emit(self, level: int, text: str) -> None:
        raise NotImplementedError

    def info(self, text: str) -> None:
        self.emit(logging.INFO, text)

    def warning(self, text: str) -> None:
        self.emit(logging.WARNING, text)

    def error(self, text: str) -> None:
        self.emit(logging.ERROR, text)


class NullSink(Sink):
    def emit(self, level: int, text: str) -> None:
        pass


class LoggingSink(Sink):
    def __init__(self, logger: Optional[logging.Logger] = None) -> None:
        self.logger = logger if logger is not None else logging.getLogger(__name__)

    def emit(self, level: int, text: str) -> None:
        self.logger.log(level, text)


class ReportSink(Sink):
    """
    Keeps every note of one verification report in order and hands
    each one on to `forward` as well.
    """

    def __init__(self, forward: Optional[Sink] = None) -> None:
        self.forward = forward if forward is not None else LoggingSink()
        self.collected: List[Note] = []

    def emit(self, level: int, text: str) -> None:
        self.collected.append(Note(level, text))
        self.forward.emit(level, text)

    @property
    def notes(self) -> List[str]:
        return [str(note) for note in self.collected]
