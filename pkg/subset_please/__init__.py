from .criteria import aic, aicc, bic, cp, err_kl_estimate, err_kl_train
from .dof import bdf_bootstrap, edf_monte_carlo, hdf, hdf_profile
from .lasso import lasso_cd
from .paths import bs_exhaustive, bs_orthogonal, boss_path, fs_path, lbs_path
from .selection import estimate_noise, kfold_cv, lasso_cv, select_ic, select_subset
from .simulation import compare_lbs, loo_real_data, run_experiment
from .types import Dataset, SelectionResult, SimConfig, SolutionPath

__all__ = [
    "Dataset",
    "SelectionResult",
    "SimConfig",
    "SolutionPath",
    "aic",
    "aicc",
    "bdf_bootstrap",
    "bic",
    "boss_path",
    "bs_exhaustive",
    "bs_orthogonal",
    "compare_lbs",
    "cp",
    "edf_monte_carlo",
    "err_kl_estimate",
    "err_kl_train",
    "estimate_noise",
    "fs_path",
    "hdf",
    "hdf_profile",
    "kfold_cv",
    "lasso_cd",
    "lasso_cv",
    "lbs_path",
    "loo_real_data",
    "run_experiment",
    "select_ic",
    "select_subset",
]
