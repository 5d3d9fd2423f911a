import sys

from lingaug.cli import main

sys.exit(main())
