"""Error vocabulary shared by the library, the REST service, and the CLI.

Every public operation fails with one of these types. The class name doubles
as the stable machine code (``code``) carried on the wire, and ``http_status``
is the status the service maps the error to.
"""

from __future__ import annotations


class SwarmError(Exception):
    """Base class for all domain errors."""

    http_status = 422

    @property
    def code(self) -> str:
        return type(self).__name__

    def __str__(self) -> str:
        msg = super().__str__()
        return msg if msg else self.code


class UnknownProduct(SwarmError):
    http_status = 404


class UnknownTask(SwarmError):
    http_status = 404


class UnknownSession(SwarmError):
    http_status = 404


class UnknownDeveloper(SwarmError):
    http_status = 404


class UnknownType(SwarmError):
    http_status = 404


class SessionClosed(SwarmError):
    """Write addressed to a session that has already ended."""

    http_status = 409


class AlreadyClosed(SwarmError):
    http_status = 409


class SessionOpen(SwarmError):
    """Metric requested for a session that has not ended yet."""


class InvalidLine(SwarmError):
    """Breakpoint line numbers are 1-based."""


class InvalidValue(SwarmError):
    """Entity field failed model validation."""


class EmptySnapshot(SwarmError):
    """Step event carried no stack frames."""


class OutOfOrderTimestamp(SwarmError):
    """Event timestamp precedes an already accepted event of the session."""


class EmptyQuery(SwarmError):
    """Search query was empty or whitespace."""


class MissingSource(SwarmError):
    """Breakpoint references a type whose source is not available."""


class NoDefinedMFB(SwarmError):
    """No session in the population has both a breakpoint and an end time."""


class DegenerateInput(SwarmError):
    """Fewer than two distinct x values; no power law can be fitted."""


class NonPositive(SwarmError):
    """Power-law fit needs strictly positive coordinates."""


class EmptyGroup(SwarmError):
    """Group comparison requires at least one session per group."""


class CyclicInvocation(SwarmError):
    """Session invocation relation contains a cycle; no forest exists."""


class UnreadableStream(SwarmError):
    """Session log stream could not be read at all."""


class DuplicateName(SwarmError):
    """Uniqueness constraint (name / issue key / full name) violated."""


class StorageCorrupt(SwarmError):
    """Store file failed the magic header or a record failed to parse."""
