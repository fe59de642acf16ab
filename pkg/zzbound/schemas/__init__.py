from zzbound.schemas.config_file import ConfigFile, ScanOptions

__all__ = ["ConfigFile", "ScanOptions"]
