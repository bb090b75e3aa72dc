import sys

from edslab.cli import main

sys.exit(main())
