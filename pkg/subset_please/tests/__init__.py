from .cli import MainTest
from .config import LoadConfigTest, RunConfigTest
from .criteria import CriteriaTest, ErrKlTest, TraceTest
from .datasets import BundledTest, RealDataLooTest
from .dof import CovarianceDfTest, DatasetPathRuleTest, HdfTest, NullHdfTest
from .lasso import LassoCvTest, LassoTest
from .linalg import BackSolveTest, CenterTest, OlsTest, QrAppendTest
from .paths import (
    BestSubsetTest,
    BossPathTest,
    LagrangianAgreementTest,
    LagrangianTest,
    OrderingTest,
    OrthogonalizeTest,
    RandomInstancesTest,
)
from .report import ReadCsvTest, RenderTest
from .selection import (
    AssignFoldsTest,
    EstimateNoiseTest,
    KfoldCvTest,
    ParseSelectorTest,
    SelectIcTest,
    SelectSubsetTest,
)
from .simulation import (
    CalibrationTest,
    DesignTest,
    DfProfilesTest,
    ExperimentTest,
    KnownNoiseTest,
    LbsComparisonTest,
    LooTest,
    MonteCarloTest,
)

__all__ = [
    "AssignFoldsTest",
    "BackSolveTest",
    "BestSubsetTest",
    "BossPathTest",
    "BundledTest",
    "CalibrationTest",
    "CenterTest",
    "CovarianceDfTest",
    "CriteriaTest",
    "DatasetPathRuleTest",
    "DesignTest",
    "DfProfilesTest",
    "ErrKlTest",
    "EstimateNoiseTest",
    "ExperimentTest",
    "HdfTest",
    "KfoldCvTest",
    "KnownNoiseTest",
    "LagrangianAgreementTest",
    "LagrangianTest",
    "LassoCvTest",
    "LassoTest",
    "LbsComparisonTest",
    "LoadConfigTest",
    "LooTest",
    "MainTest",
    "MonteCarloTest",
    "NullHdfTest",
    "OlsTest",
    "OrderingTest",
    "OrthogonalizeTest",
    "ParseSelectorTest",
    "QrAppendTest",
    "RandomInstancesTest",
    "ReadCsvTest",
    "RealDataLooTest",
    "RenderTest",
    "RunConfigTest",
    "SelectIcTest",
    "SelectSubsetTest",
    "TraceTest",
]
