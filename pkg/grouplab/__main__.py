import sys

from grouplab.main import main

sys.exit(main())
