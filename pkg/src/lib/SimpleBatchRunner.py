import concurrent.futures
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Sequence

from services.logger.Logger import _log


class SimpleBatchRunner:
    def __init__(self, max_workers=4, label="batch"):
        """
        Initializes the SimpleBatchRunner.

        Args:
            max_workers (int): The maximum number of threads to use. 1 runs inline.
            label (str): Name used in log records.
        """
        self.max_workers = max(1, int(max_workers))
        self.label = label

    def _worker(self, job: Callable[[], Any], job_index: int) -> dict:
        """
        Run one job.

        Args:
            job (Callable): A zero-argument callable.
            job_index (int): The original index of the job in the input list.

        Returns:
            dict: {'index': job_index, 'result': value} or {'index': job_index, 'error': exception}.
        """
        try:
            return {'index': job_index, 'result': job()}
        except Exception as e:
            return {'index': job_index, 'error': e}

    def run(self, jobs: Sequence[Callable[[], Any]]) -> list:
        """
        Executes independent jobs in parallel and returns their results in input order.

        Reductions over the returned list are therefore deterministic whatever the
        completion order of the threads.

        Args:
            jobs (Sequence[Callable]): Zero-argument callables.

        Returns:
            list: Job results, index-aligned with `jobs`.

        Raises:
            Exception: The error of the lowest-index failed job, after every job finished.
        """
        results = [None] * len(jobs)
        if not jobs:
            return results

        if self.max_workers == 1 or len(jobs) == 1:
            processed = [self._worker(job, i) for i, job in enumerate(jobs)]
        else:
            processed = []
            with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
                future_to_index = {executor.submit(self._worker, job, i): i for i, job in enumerate(jobs)}
                for future in concurrent.futures.as_completed(future_to_index):
                    processed.append(future.result())

        failed = sorted((res for res in processed if 'error' in res), key=lambda res: res['index'])
        if failed:
            _log(f"[{self.label}] {len(failed)} of {len(jobs)} jobs failed", {"indices": [res['index'] for res in failed]}, level="ERROR")
            raise failed[0]['error']

        for res in processed:
            results[res['index']] = res['result']
        _log(f"[{self.label}] finished {len(jobs)} jobs", level="DEBUG")
        return results
