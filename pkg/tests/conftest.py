"""Shared fixtures: atlas runs are expensive, so they are session-scoped."""

from __future__ import annotations

import io
import sys
from contextlib import redirect_stdout
from dataclasses import dataclass

import pytest

from acainvert import Neighborhood, cli, eca_from_wolfram, with_neighborhood
from acainvert.atlas import classify_all_eca
from acainvert.invertibility import decide_fully_1d

PADDED_NEIGHBORHOOD = Neighborhood.line(-2, -1, 0, 1, 3)


def padded_fully_verdict(n: int) -> str:
    """Fully asynchronous verdict after widening with dummy offsets."""
    padded = with_neighborhood(eca_from_wolfram(n), PADDED_NEIGHBORHOOD)
    return decide_fully_1d(padded).verdict.value


@dataclass
class CliResult:
    exit_code: int
    stdout: str


def invoke_cli(*argv: str) -> CliResult:
    buf = io.StringIO()
    try:
        with redirect_stdout(buf):
            code = cli.main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = exc.code if isinstance(exc.code, int) else 2
    return CliResult(exit_code=code, stdout=buf.getvalue())


@pytest.fixture(scope="session")
def run_cli():
    return invoke_cli


@pytest.fixture(scope="session")
def purely_atlas():
    return classify_all_eca("purely")


@pytest.fixture(scope="session")
def fully_atlas():
    return classify_all_eca("fully", workers=4)
