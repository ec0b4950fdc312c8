import sys

from aucreduce.cli import main

sys.exit(main())
