import os


def _strtobool(value, default=False):
    if value is None:
        return default
    return value.strip().lower() in {"1", "true", "yes", "on"}


def _env_float(name, default):
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"Invalid float for {name}: {raw}")


def _env_int(name, default):
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"Invalid integer for {name}: {raw}")


# 数值容差配置（全部为无量纲相对量）
# RANK_CUT: 奇异值相对截断，低于 RANK_CUT * sigma_max 视为 0
# RESIDUAL: 零判定阈值，按操作数 max-norm 乘积（下限 1）缩放
RANK_CUT = _env_float("PRESERVER_RANK_CUT", 1e-9)
RESIDUAL = _env_float("PRESERVER_RESIDUAL", 1e-9)
SAMPLE_TRIALS = _env_int("PRESERVER_SAMPLE_TRIALS", 1000)

# 分解流程内部阈值
UNITARY_TOL = _env_float("PRESERVER_UNITARY_TOL", 1e-8)
# 奇异值相对间隙低于此值归入同一重数块
CLUSTER_GAP = _env_float("PRESERVER_CLUSTER_GAP", 1e-7)
# 符号矩阵特征值距 ±1 在此范围内才吸附
SIGN_TOL = _env_float("PRESERVER_SIGN_TOL", 1e-6)
# 分类器抽样交叉校验的相对容差
CROSS_CHECK_REL = _env_float("PRESERVER_CROSS_CHECK_REL", 1e-9)

# fuzz 配置
FUZZ_WORKERS = _env_int("PRESERVER_FUZZ_WORKERS", 1)
PROGRESS_ENABLED = _strtobool(os.getenv("PRESERVER_PROGRESS"), default=False)

# 日志配置，LOG_DIR 留空表示只写 stderr
LOG_DIR = os.getenv("PRESERVER_LOG_DIR", "").strip()
ALLOWED_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def normalize_log_level(value):
    level = (value or "").strip().upper()
    if level not in ALLOWED_LOG_LEVELS:
        raise ValueError(
            f"Unsupported log level: {value} (allowed: {', '.join(ALLOWED_LOG_LEVELS)})"
        )
    return level


LOG_LEVEL = normalize_log_level(os.getenv("PRESERVER_LOG_LEVEL", "WARNING"))
