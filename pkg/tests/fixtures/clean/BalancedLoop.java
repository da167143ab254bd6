package app.net;

import android.os.PowerManager;

public class BalancedLoop {
    public void drainQueue(PowerManager.WakeLock lock) {
        while (hasWork()) {
            lock.acquire();
            step();
            lock.release();
        }
    }

    private boolean hasWork() {
        return false;
    }

    private void step() {
    }
}
