import sys

from jointdyad.cli.main import main

sys.exit(main())
