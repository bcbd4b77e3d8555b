import sys

from borderedsd.cli import main

sys.exit(main())
