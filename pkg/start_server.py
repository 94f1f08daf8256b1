"""
Start script for the HTTP API
Serves the audit, sequence, polynomial, p-adic and cross-check endpoints
"""
import os
import sys
from pathlib import Path

import uvicorn

if __name__ == "__main__":
    # Get the project root directory
    project_root = Path(__file__).parent

    # Package imports resolve from the project root
    sys.path.insert(0, str(project_root))
    os.chdir(project_root)

    host = os.environ.get("EULERIAN_AUDIT_HOST", "0.0.0.0")
    port = int(os.environ.get("EULERIAN_AUDIT_PORT", "8000"))

    print("=" * 60)
    print("Eulerian Identity Audit API")
    print("=" * 60)
    print("\nStarting server...")
    print(f"API root: http://localhost:{port}/")
    print(f"API documentation at: http://localhost:{port}/docs")
    print(f"Identity registry: http://localhost:{port}/registry")
    print("\nPress Ctrl+C to stop the server\n")

    uvicorn.run(
        "eulerian_audit.main:app",
        host=host,
        port=port,
        reload=False,
    )
