"""Run the service: python -m fewdist.service"""

import uvicorn


def main() -> None:
    uvicorn.run("fewdist.service.app:app", host="127.0.0.1", port=8000)


if __name__ == "__main__":
    main()
