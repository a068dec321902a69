import sys

from ladderkit.app_info import APP_NAME, APP_VERSION
from ladderkit.cli.commands import cli
from ladderkit.core import AppContext


def main() -> None:
    """Application entry point."""
    ctx = AppContext.create()
    settings_manager = ctx.settings_manager
    settings_manager.log_system_event("App", f"{APP_NAME} {APP_VERSION} started", {"argv": sys.argv[1:]})

    # --- Command dispatch + crash logging -------------------------------------
    try:
        code = cli.main(args=sys.argv[1:], prog_name="ladderkit", obj=ctx, standalone_mode=False)
    except Exception as e:
        # Best-effort logging, don't crash if logging fails
        try:
            settings_manager.log_error("App", f"Application crashed: {e}")
        except Exception:
            pass
        raise
    sys.exit(code)


if __name__ == "__main__":
    main()
