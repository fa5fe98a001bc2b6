from tlabench.tla.scan import ActionDef, TlaModuleOutline, scan_module
from tlabench.tla.postprocess import REQUIRED_MODULES, postprocess
from tlabench.tla.config import ConfigResult, make_config

__all__ = [
    "ActionDef", "ConfigResult", "REQUIRED_MODULES", "TlaModuleOutline",
    "make_config", "postprocess", "scan_module",
]
