from .scripts.gsdescent import main

main()
