class TrainingListener():

    def onBatchEnd(self, epoch: int, batch: int, loss: float) -> None:

        pass

    def onEpochEnd(self, epoch: int, loss: float, accuracy: float) -> None:

        pass

    def onScstStep(self, step: int, sample_reward: float, greedy_reward: float) -> None:

        pass

    def onCheckpoint(self, path: str, epoch: int) -> None:

        pass
