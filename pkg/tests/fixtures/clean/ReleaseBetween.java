package app.net;

import android.os.PowerManager;

public class ReleaseBetween {
    public void twoBursts(PowerManager.WakeLock lock) {
        lock.acquire();
        step();
        lock.release();
        lock.acquire();
        step();
        lock.release();
    }

    private void step() {
    }
}
