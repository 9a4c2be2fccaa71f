import sys

from fixedspace.cli import main

sys.exit(main())
