"""Leveled event logging for simulation runs, rendered with rich on stderr.

Events may carry the run they belong to (scenario and controller) and the
simulation time they refer to, so messages from the two controllers of a
parallel comparison stay distinguishable.
"""

import queue
from enum import Enum
from typing import Any, Iterator, Optional, Union

from pydantic import BaseModel, ConfigDict
from rich.console import Console
from rich.panel import Panel
from rich.text import Text

console = Console(stderr=True)


class LogLevel(str, Enum):
    DEBUG = "debug"
    INFO = "info"
    WARNING = "warning"
    ERROR = "error"
    CRITICAL = "critical"

    @property
    def rank(self) -> int:
        return list(LogLevel).index(self)

    @property
    def color(self) -> str:
        return LEVEL_COLORS[self]

    def __ge__(self, other: Union["LogLevel", str]) -> bool:
        return self.rank >= LogLevel(other).rank


LEVEL_COLORS = {
    LogLevel.DEBUG: "blue",
    LogLevel.INFO: "green",
    LogLevel.WARNING: "yellow",
    LogLevel.ERROR: "red",
    LogLevel.CRITICAL: "red bold",
}


class RunContext(BaseModel):
    """Scenario and controller an event belongs to."""

    model_config = ConfigDict(frozen=True)

    scenario: str = ""
    controller: str = ""

    def __str__(self) -> str:
        return "/".join(part for part in (self.scenario, self.controller) if part)


class LogEvent(BaseModel):
    """One log message.

    Attributes:
        level: Severity.
        msg: Message text.
        data: Optional payload rendered below the message.
        run: Run the event belongs to, if any.
        t: Simulation time (s) the event refers to, if any.
    """

    level: LogLevel
    msg: str
    data: Optional[Any] = None
    run: Optional[RunContext] = None
    t: Optional[float] = None

    @property
    def origin(self) -> str:
        parts = [str(self.run)] if self.run is not None and str(self.run) else []
        if self.t is not None:
            parts.append(f"t={self.t:.3f} s")
        return " ".join(parts)

    def __str__(self) -> str:
        head = self.level.name
        if self.origin:
            head += f" [{self.origin}]"
        result = f"{head}: {self.msg}"
        if self.data:
            result += f"\nData: {self.data}"
        return result

    def __rich__(self) -> Text:
        color = self.level.color
        text = Text()
        text.append(f"{self.level.name}: ", style=color)
        if self.origin:
            text.append(f"[{self.origin}] ", style=f"{color} italic")
        text.append(self.msg, style=f"dim {color}")

        if self.data:
            text.append("\nData: ", style=f"{color} bold")
            text.append(str(self.data), style=f"dim {color}")

        return text

    def print(self, target: Optional[Console] = None) -> None:
        (target or console).print(Panel(self.__rich__(), border_style=self.level.color))


class Logger:
    """Leveled event logger rendering through rich.

    Events at or above the current level are printed immediately when
    ``auto_print`` is set; otherwise every event is queued and can be
    drained with :meth:`events` or rendered later with :meth:`print`.
    Loggers returned by :meth:`bind` share their parent's queue, which is
    safe to feed from several threads.
    """

    def __init__(
        self,
        level: Union[LogLevel, str] = LogLevel.INFO,
        auto_print: bool = True,
        run: Optional[RunContext] = None,
        sink: Optional["queue.Queue[LogEvent]"] = None,
    ):
        self._queue: queue.Queue[LogEvent] = sink if sink is not None else queue.Queue()
        self._auto_print = auto_print
        self._level = LogLevel(level)
        self._run = run

    @property
    def run(self) -> Optional[RunContext]:
        return self._run

    def bind(self, scenario: str = "", controller: str = "") -> "Logger":
        """Child logger stamping its events with a run context."""
        return Logger(
            self._level,
            self._auto_print,
            RunContext(scenario=scenario, controller=controller),
            self._queue,
        )

    def level(self, level: Union[LogLevel, str, None] = None) -> LogLevel:
        if level is not None:
            self._level = LogLevel(level)
        return self._level

    def log(
        self, level: Union[LogLevel, str], msg: str, data: Any = None, t: Optional[float] = None
    ) -> None:
        event = LogEvent(level=LogLevel(level), msg=msg, data=data, run=self._run, t=t)
        if not self._auto_print:
            self._queue.put(event)
        elif event.level >= self._level:
            event.print()

    def debug(self, msg: str, data: Any = None, t: Optional[float] = None) -> None:
        self.log(LogLevel.DEBUG, msg, data, t)

    def info(self, msg: str, data: Any = None, t: Optional[float] = None) -> None:
        self.log(LogLevel.INFO, msg, data, t)

    def warning(self, msg: str, data: Any = None, t: Optional[float] = None) -> None:
        self.log(LogLevel.WARNING, msg, data, t)

    def error(self, msg: str, data: Any = None, t: Optional[float] = None) -> None:
        self.log(LogLevel.ERROR, msg, data, t)

    def critical(self, msg: str, data: Any = None, t: Optional[float] = None) -> None:
        self.log(LogLevel.CRITICAL, msg, data, t)

    def events(self) -> Iterator[LogEvent]:
        """Drain the queued events in arrival order."""
        while True:
            try:
                yield self._queue.get_nowait()
            except queue.Empty:
                return

    def print(self, level: Union[LogLevel, str, None] = None) -> None:
        """Render queued events at or above ``level`` (the logger's level by default)."""
        threshold = self._level if level is None else LogLevel(level)
        for event in self.events():
            if event.level >= threshold:
                event.print()


def default_logger() -> Logger:
    """Create a logger at the configured level."""
    from mrpsim.config import get_config

    return Logger(level=get_config().log_level)
