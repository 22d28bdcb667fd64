import sys

from rp2.cli import main

sys.exit(main())
