import logging

import pytest
from pytest_mock import MockerFixture

from gso_framework.dispatcher import TrialDispatcher
from gso_framework.tests.models import logged_trial


def test_sequential_run_keeps_order(caplog) -> None:
    caplog.set_level(logging.INFO)
    dispatcher = TrialDispatcher()

    assert dispatcher.run(logged_trial, [2, 0, 1], 10) == [14, 10, 11]
    assert "Dispatching 3 trials on 1 worker(s)." in caplog.text


def test_sequential_run_needs_no_logging_queue(mocker: MockerFixture) -> None:
    setup = mocker.patch("gso_framework.dispatcher.setup_logging")
    dispatcher = TrialDispatcher(workers=1)

    assert dispatcher.log_queue is None
    setup.assert_not_called()
    dispatcher.stop_logging()


def test_incorrect_workers() -> None:
    with pytest.raises(ValueError):
        TrialDispatcher(workers=0)


@pytest.mark.slow
def test_parallel_run_keeps_order() -> None:
    dispatcher = TrialDispatcher(workers=3)
    try:
        assert dispatcher.run(logged_trial, range(8), 1) == [1 + i ** 2 for i in range(8)]
    finally:
        dispatcher.stop_logging()
