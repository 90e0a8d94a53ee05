import os
from dataclasses import dataclass, field


@dataclass
class OracleConfig:
    max_len_k2: int = 9
    max_len_k3: int = 7
    max_len_k4: int = 6
    rank_max_columns: int = 2187  # 3^7 words


@dataclass
class SweepConfig:
    budget_k2: int = 9
    budget_k3: int = 7
    budget_sharp: int = 6
    structure_budget: int = 8
    jobs: int = 1
    r_cap: int = 8


@dataclass
class FamilyLimits:
    factorial_max_n: int = 6
    fibonacci_max_n: int = 12
    supergeom_max_len: int = 14
    sharp_max_n: int = 5


@dataclass
class KernelConfig:
    oracle: OracleConfig = field(default_factory=OracleConfig)
    sweep: SweepConfig = field(default_factory=SweepConfig)
    families: FamilyLimits = field(default_factory=FamilyLimits)
    log_level: str = "WARNING"
    debug: bool = False

    def suite_limits(self) -> dict:
        """Keyword arguments for the verification suites"""
        return {
            "oracle_max_len_k2": self.oracle.max_len_k2,
            "oracle_max_len_k3": self.oracle.max_len_k3,
            "oracle_max_len_k4": self.oracle.max_len_k4,
            "rank_max_columns": self.oracle.rank_max_columns,
            "budget_k2": self.sweep.budget_k2,
            "budget_k3": self.sweep.budget_k3,
            "budget_sharp": self.sweep.budget_sharp,
            "structure_budget": self.sweep.structure_budget,
            "factorial_max_n": self.families.factorial_max_n,
            "fibonacci_max_n": self.families.fibonacci_max_n,
            "supergeom_max_len": self.families.supergeom_max_len,
            "sharp_max_n": self.families.sharp_max_n,
            "jobs": self.sweep.jobs,
        }


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    return default if value is None or value.strip() == "" else int(value)


def load_config() -> KernelConfig:
    """Load configuration from environment variables"""
    config = KernelConfig()

    config.oracle.max_len_k2 = _env_int("HALL_KERNEL_ORACLE_MAX_LEN_K2", config.oracle.max_len_k2)
    config.oracle.max_len_k3 = _env_int("HALL_KERNEL_ORACLE_MAX_LEN_K3", config.oracle.max_len_k3)

    config.sweep.jobs = _env_int("HALL_KERNEL_JOBS", config.sweep.jobs)
    config.sweep.r_cap = _env_int("HALL_KERNEL_R_CAP", config.sweep.r_cap)

    config.debug = os.getenv("HALL_KERNEL_DEBUG", "false").lower() == "true"
    config.log_level = os.getenv("HALL_KERNEL_LOG_LEVEL", "DEBUG" if config.debug else config.log_level).upper()

    return config
