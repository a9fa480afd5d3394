import sys

from .hvcli.cli import main

sys.exit(main())
