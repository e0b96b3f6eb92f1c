import sys

from cubic_beta.cli import main

sys.exit(main())
