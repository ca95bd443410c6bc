"""Discrete-event simulator for transfer-learning orchestration in multi-tier networks."""

from .scenario import load_scenario, parse_scenario, validate
from .simengine import Scenario, SimReport, run

__all__ = ["Scenario", "SimReport", "load_scenario", "parse_scenario", "run", "validate"]
__version__ = "0.1.0"
