import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from bridgeopt.studies import StudyId, StudySpec, coarse_grid, fine_grid
from bridgeopt.sweep import run_study

MASTER_SEED = 0
N_JOBS = min(2, os.cpu_count() or 1)


@pytest.fixture(scope="session")
def study_a_report():
    spec = StudySpec(study=StudyId.A, grid=coarse_grid())
    return run_study(spec, master_seed=MASTER_SEED, n_jobs=N_JOBS)


@pytest.fixture(scope="session")
def study_b_report():
    spec = StudySpec(study=StudyId.B, grid=coarse_grid())
    return run_study(spec, master_seed=MASTER_SEED, n_jobs=N_JOBS)


@pytest.fixture(scope="session")
def study_c_report():
    spec = StudySpec(study=StudyId.C, grid=fine_grid())
    return run_study(spec, master_seed=MASTER_SEED, n_jobs=N_JOBS)


@pytest.fixture(scope="session")
def study_d_report():
    spec = StudySpec(study=StudyId.D, grid=coarse_grid())
    return run_study(spec, master_seed=MASTER_SEED, n_jobs=N_JOBS)
