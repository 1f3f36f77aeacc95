import sys

from medcrypt.cli import main

sys.exit(main())
