import sys

from cusplab.cli import main

sys.exit(main())
