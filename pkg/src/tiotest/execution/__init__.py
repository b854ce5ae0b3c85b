"""Simulated implementations, fair execution and campaigns."""

from .campaign import CampaignReport, TestCase, campaign, exhaustiveness_tp, prepare
from .impl import BlockingImplError, ImplModel, Mutation, make_impl
from .scheduler import FairScheduler
from .simulate import FAIL, PASS, RUNNING, Behaviour, Budget, SimulationError, run_test

__all__ = [
    "FAIL", "PASS", "RUNNING", "Behaviour", "BlockingImplError", "Budget",
    "CampaignReport", "FairScheduler", "ImplModel", "Mutation", "SimulationError",
    "TestCase", "campaign", "exhaustiveness_tp", "make_impl", "prepare", "run_test",
]
