import sys

from hdx.cli import main

sys.exit(main())
