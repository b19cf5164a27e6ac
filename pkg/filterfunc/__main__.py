import sys

from filterfunc.main import main

sys.exit(main())
