"""Quarterly time-series econometrics: AR/VAR by OLS, unit-root, break, Granger and cointegration tests."""

from .errors import CriticalValueNotTabulated, EconokitError, ExactFitError, RankDeficientError
from .series import AcfTable, QuarterIndex, Series, SummaryStats, acf, from_rows, lead_lag_corr, log_diff, summary
from .linreg import FisherF, FitResult, FStat, RegressionData, StdNormal, StudentT, build_lagged_design, f_test, fit_ols, tail_prob
from .autoregression import ArModel, ForecastPath, LagSelection, fit_ar, forecast_ar, select_ar_lag
from .stability import AdfResult, AdfSpec, ChowResult, QlrResult, adf_critical, adf_test, chow_f, qlr_critical, qlr_test
from .var import GrangerResult, VarLagSelection, VarModel, fit_var, forecast_var, granger_test, select_var_lag
from .cointegration import CointResult, egadf_test

__version__ = "0.1.0"
