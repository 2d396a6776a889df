import os
from dotenv import load_dotenv

load_dotenv()

BICONN_THREADS: int = int(os.getenv("BICONN_THREADS", "4"))
LOG_LEVEL: str = os.getenv("BICONN_LOG_LEVEL", "INFO")
EXACT_CAP: int = int(os.getenv("BICONN_EXACT_CAP", "20"))
ROOT_CAP: int = int(os.getenv("BICONN_ROOT_CAP", "12"))
RECORD_TIMINGS: bool = os.getenv("BICONN_TIMINGS", "0") == "1"
DUMP_DIR: str = os.getenv("BICONN_DUMP_DIR", "counterexamples")
FORMAT_VERSION: int = 1
