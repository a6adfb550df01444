"""Data models for the Green's function toolkit."""
from models.analytic import AnalyticParams, ShellSumSpec
from models.cli_config import CliConfig
from models.coset import Coset
from models.params import Params, is_prime
from models.report import CheckEntry, CheckResult, Report, ReportSummary
from models.tables import BoundedValue, GreenTable, RationalMatrix, SampledFunction

__all__ = [
    'AnalyticParams',
    'BoundedValue',
    'CheckEntry',
    'CheckResult',
    'CliConfig',
    'Coset',
    'GreenTable',
    'Params',
    'RationalMatrix',
    'Report',
    'ReportSummary',
    'SampledFunction',
    'ShellSumSpec',
    'is_prime',
]
