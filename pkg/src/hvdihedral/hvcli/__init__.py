from .cli import main
from .config import VerifyConfig, load_config
from .pipelines import run_property_suite, verify_main_identity, verify_opt_unique
from .report import Report
