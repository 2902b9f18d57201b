import sys

from nitpart.cli import main

sys.exit(main())
