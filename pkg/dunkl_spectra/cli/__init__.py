from .verify import CRITERIA, CriterionResult, VerificationSummary, verify_all
from .run import COMMANDS, RunConfig, Runner, parse_pairs, run
from .main import main

__all__ = [
    'COMMANDS', 'RunConfig', 'Runner', 'parse_pairs', 'run', 'main',
    'CRITERIA', 'CriterionResult', 'VerificationSummary', 'verify_all',
]
