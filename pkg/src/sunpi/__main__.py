import sys

from sunpi.cli import main

sys.exit(main())
