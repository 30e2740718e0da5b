def banner(title: str) -> None:
    print(f"\n--- {title} ---")
