"""Fixed-size daemon worker pool for fuzz trials.

固定数量的常驻 daemon 线程从内部队列取试验序号并执行，结果按序号收集；
每个试验只依赖 (master, 序号) 派生的随机源，所以线程数和完成顺序都不影响结果。
"""

import queue
import threading


class TrialWorkerPool:
    def __init__(self, size, worker, *, name="fuzz-worker", on_done=None):
        self._size = max(1, int(size))
        self._worker = worker  # callable(trial_index) -> result
        self._on_done = on_done  # callable(trial_index)，用于进度条
        self._queue = queue.Queue()
        self._threads = []
        self._started = False
        self._start_lock = threading.Lock()
        self._results_lock = threading.Lock()
        self._results = {}
        self._errors = {}
        self._name = name

    def start(self):
        with self._start_lock:
            if self._started:
                return
            self._started = True
            for i in range(self._size):
                thread = threading.Thread(
                    target=self._loop, name=f"{self._name}-{i}", daemon=True
                )
                thread.start()
                self._threads.append(thread)

    def submit(self, trial_index):
        # 懒启动：首次提交时才拉起 worker
        if not self._started:
            self.start()
        self._queue.put(trial_index)

    def _loop(self):
        while True:
            item = self._queue.get()
            try:
                if item is None:  # 退出哨兵
                    return
                try:
                    result = self._worker(item)
                except Exception as exc:
                    with self._results_lock:
                        self._errors[item] = exc
                else:
                    with self._results_lock:
                        self._results[item] = result
                if self._on_done is not None:
                    self._on_done(item)
            finally:
                self._queue.task_done()

    def join(self):
        self._queue.join()

    def stop(self):
        for _ in self._threads:
            self._queue.put(None)

    def results(self):
        """
        按序号升序返回 (序号, 结果)

        Raises:
            Exception: 序号最小的那个 worker 异常
        """
        with self._results_lock:
            if self._errors:
                raise self._errors[min(self._errors)]
            return sorted(self._results.items())

    def run(self, indices):
        for index in indices:
            self.submit(index)
        self.join()
        self.stop()
        return self.results()

    def qsize(self):
        return self._queue.qsize()
