import os
from dotenv import load_dotenv

load_dotenv()


def _env_bool(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return default
    return raw.strip().lower() in ('1', 'true', 'yes', 'on')


# 数值计算配置（CLI 参数可逐项覆盖，见 models.report.SearchConfig.from_settings）
NUMERIC_CONFIG = {
    # 工作精度（bit）；4k 次族按次数自动抬高，见 bounds.generators.working_precision
    'precision_bits': int(os.getenv('BH_PRECISION_BITS', 256)),
    'auto_raise_precision': _env_bool('BH_AUTO_RAISE', True),
    # 范数 oracle 的绝对容差
    'norm_tol': float(os.getenv('BH_NORM_TOL', 1e-10)),
    # 一维搜索：先稠密网格，再黄金分割到 tol_t
    'grid_points': int(os.getenv('BH_GRID_POINTS', 4096)),
    'tol_t': float(os.getenv('BH_TOL_T', 1e-12)),
    # ℓ∞ 范数只支持到 8 个变量
    'max_nvars': 8,
    # phi_bruteforce 最多枚举 n^m 个指标元组
    'bruteforce_max_terms': 10 ** 7,
    # D_C2 二维搜索：a=1，b ∈ [-1, -b_floor]，c ∈ [0, c_max]
    'dc2_grid': int(os.getenv('BH_DC2_GRID', 512)),
    'dc2_b_floor': 1e-6,
    'dc2_c_max': 16.0,
}

# 运行期配置
RUNTIME_CONFIG = {
    # 表格各行并行计算的进程数；1 表示进程内串行
    'workers': int(os.getenv('BH_WORKERS', os.cpu_count() or 1)),
    # 非空时额外写一份日志文件
    'log_file': os.getenv('BH_LOG_FILE', ''),
    'log_level': os.getenv('BH_LOG_LEVEL', 'INFO').upper(),
}
