"""Syntomic regulator computations for the Gamma_1(3) elliptic family over Z_p[nu]."""

__version__ = "0.1.0"

from .padic import (  # noqa: E402
    ConfigurationError,
    EisNum,
    PadicDomainError,
    PadicNum,
    PrecisionError,
    padic_log,
)
from .series import FrobeniusSpec, NonIntegrableError, TSeries  # noqa: E402
from .special import (  # noqa: E402
    hypergeometric_F,
    log_sigma,
    polylog_eval,
    polylog_series,
    polylog_xform,
    tate_period,
)
from .filfmic import FilFMICObject, check_horizontality, make_log, make_polylog, make_tate  # noqa: E402
from .family import FamilyData  # noqa: E402
from .regulator import RegulatorResult, UnsupportedEvaluation, regulator_output  # noqa: E402

__all__ = [
    "ConfigurationError", "EisNum", "PadicDomainError", "PadicNum", "PrecisionError", "padic_log",
    "FrobeniusSpec", "NonIntegrableError", "TSeries",
    "hypergeometric_F", "log_sigma", "polylog_eval", "polylog_series", "polylog_xform", "tate_period",
    "FilFMICObject", "check_horizontality", "make_log", "make_polylog", "make_tate",
    "FamilyData", "RegulatorResult", "UnsupportedEvaluation", "regulator_output",
]
