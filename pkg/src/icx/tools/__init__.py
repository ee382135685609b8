from .import_files import import_icx, import_yaml
from .import_records import CorpusRecord, import_records

__all__ = ["import_records", "import_icx", "import_yaml", "CorpusRecord"]
